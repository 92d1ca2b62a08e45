"""Shaped singular spectrum analysis.

Group arguments use the CLI grammar with 1-based eigentriple numbers,
for example "Trend=1;Season=2-3".
"""

from ._core import (
    ComputeError,
    Decomposition,
    Plan,
    ValidationError,
    circle_mask,
    decompose,
    esprit,
    esprit_2d,
    forecast,
    load,
    plan_1d,
    plan_2d,
    plan_cssa,
    plan_mssa,
    plan_shaped,
    reconstruct,
    triangle_mask,
    wcor,
)

__all__ = [
    "ComputeError",
    "Decomposition",
    "Plan",
    "ValidationError",
    "circle_mask",
    "decompose",
    "esprit",
    "esprit_2d",
    "forecast",
    "load",
    "plan_1d",
    "plan_2d",
    "plan_cssa",
    "plan_mssa",
    "plan_shaped",
    "reconstruct",
    "triangle_mask",
    "wcor",
]
