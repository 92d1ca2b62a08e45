#pragma once

#include <map>
#include <string>

#include "shssa/decomposition.hpp"

namespace shssa {

/// Decomposition directory layout:
///
///   manifest.json   plan description, method, options, sigma, free-form meta
///   grid.f64        packed data grid, nx*ny complex values
///   U.f64, V.f64    computed vectors, L x n and K x n complex values
///   basis.f64       full Gram eigenbasis (gram method only), L x L
///
/// Blocks are column-major arrays of (re, im) pairs of little-endian IEEE-754
/// doubles with no header. Missing grid cells are NaN.
void save_decomposition(const Decomposition& d, const std::string& dir,
                        const std::map<std::string, std::string>& meta = {});

Decomposition load_decomposition(const std::string& dir, std::map<std::string, std::string>* meta = nullptr);

}  // namespace shssa
