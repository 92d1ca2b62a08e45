#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shssa/decomposition.hpp"

namespace shssa {

/// Static SVG documents. Every panel is a <g class="panel"> holding a
/// <title> with its label; data points are written with six decimals.

/// One trace per eigenvector (or factor vector) against its index. Complex
/// vectors plot the real part.
std::string plot_vectors(const Decomposition& d, const std::vector<int>& indices, bool factor = false);

/// Scatterplots of (U_i, U_j) joined in index order, one panel per pair.
std::string plot_paired(const Decomposition& d, const std::vector<std::pair<int, int>>& pairs);

/// Grayscale map of |rho|: white is 0, black is 1; NaN cells are hatched red.
/// Labels start at first_index.
std::string plot_wcor(const RMatrix& w, int first_index = 1);

/// Eigenarrays (or factor arrays) laid out on the window (origin) shape,
/// grayscale scaled per panel; cells outside the shape are left blank.
std::string plot_arrays(const Decomposition& d, const std::vector<int>& indices, bool factor = false);

}  // namespace shssa
