#pragma once

#include <string>
#include <vector>

#include "shssa/decomposition.hpp"

namespace shssa {

struct Group {
    std::string name;
    std::vector<int> indices;  // 1-based eigentriple numbers
};

struct GroupSpec {
    std::vector<Group> groups;
    bool add_original = false;
    bool add_residual = false;
};

/// Grammar:
///   spec  := group (';' group)*
///   group := [name '='] item (',' item)*
///   item  := int | int '-' int
/// Unnamed groups are called F1, F2, ... by position.
GroupSpec parse_groups(const std::string& text);
/// Groups {1}, {2}, ..., {n}.
GroupSpec elementary_groups(int n);
int max_index(const GroupSpec& g);

/// A reconstructed object on the packed grid; NaN outside the covered cells.
struct Component {
    std::string name;
    CMatrix grid;
};

struct ReconstructionSet {
    PlanPtr plan;
    std::vector<Component> items;  // groups, then original and residual if requested
};

/// Sum of elementary reconstructions over 0-based indices, zero outside the
/// covered cells. All indices must already be computed.
CMatrix reconstruct_indices(const Decomposition& d, const std::vector<int>& indices);

/// Extends the decomposition when a group references uncomputed triples.
ReconstructionSet reconstruct(Decomposition& d, const GroupSpec& groups);

/// Packed data on the covered cells, NaN elsewhere.
CMatrix original_grid(const EmbeddingPlan& plan);

/// Per-series values in input layout: leading padding restored and
/// normalization undone. Cells not covered are NaN.
std::vector<CVector> grid_to_series(const EmbeddingPlan& plan, const CMatrix& grid);
/// Per-array views for 2D, shaped and M-2D plans.
std::vector<CMatrix> grid_to_arrays(const EmbeddingPlan& plan, const CMatrix& grid);

/// Re sum_cells w * a * conj(b), over cells with positive weight; NaN cells skipped.
double weighted_inner(const EmbeddingPlan& plan, const CMatrix& a, const CMatrix& b);

/// w-correlation matrix of the reconstructions of the given groups
/// (0-based index lists). Zero-norm entries are NaN.
RMatrix wcor(const Decomposition& d, const std::vector<std::vector<int>>& groups);
/// Elementary w-correlations for triples first..last (1-based, inclusive).
RMatrix wcor_range(Decomposition& d, int first, int last);

/// ||reconstruction||_w^2 / ||X||_w^2 per group.
std::vector<double> contributions(Decomposition& d, const GroupSpec& groups);

}  // namespace shssa
