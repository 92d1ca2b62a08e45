#pragma once

#include "shssa/types.hpp"

namespace shssa::fft {

/// Unnormalized forward transform: out_k = sum_j v_j exp(-2 pi i jk / N).
/// Any length >= 1 runs in O(N log N).
CVector dft(const CVector& v);
/// Inverse of dft, including the 1/N factor.
CVector idft(const CVector& v);

/// Separable 2D transform of an Nx-by-Ny array, F_Nx X F_Ny^T.
CMatrix dft2(const CMatrix& x);
/// Inverse of dft2, including the 1/(Nx Ny) factor.
CMatrix idft2(const CMatrix& x);

/// Number of cached transform plans (diagnostic).
std::size_t cached_plans();

}  // namespace shssa::fft
