#pragma once

#include "shssa/shape.hpp"
#include "shssa/types.hpp"

namespace shssa {

/// Structure of a circulant built from a generating vector or array c.
///   toeplitz                (C v)_i = sum_j c_{i-j} v_j
///   hankel                  (C v)_i = sum_j c_{i+j} v_j
/// Block variants apply the same rule along both axes of a 2D array, with
/// indices taken modulo the array dimensions.
enum class CirculantKind { toeplitz, hankel, toeplitz_block_toeplitz, hankel_block_hankel };

/// Product of the circulant generated by c with v (both the same size;
/// column vectors for the 1D kinds, arrays for the block kinds).
CMatrix circulant_multiply(CirculantKind kind, const CMatrix& c, const CMatrix& v);

/// Embedded data on its Nx-by-Ny grid together with its 2D transform.
///
/// The transform is computed once; matvecs only transform the vector side.
/// Immutable after construction, so concurrent matvecs are safe.
class FourierWorkspace {
public:
    FourierWorkspace() = default;
    /// Cells outside the data shape must already be zero.
    explicit FourierWorkspace(CMatrix grid);

    int nx() const { return int(grid_.rows()); }
    int ny() const { return int(grid_.cols()); }
    const CMatrix& grid() const { return grid_; }
    const CMatrix& transformed() const { return hat_; }

private:
    CMatrix grid_;
    CMatrix hat_;
};

enum class Direction { forward, adjoint };

/// Product with the quasi-Hankel matrix T with entries x_{l_i +- k_j}.
/// forward: v has |K| entries, returns T v (|L| entries).
/// adjoint: v has |L| entries, returns T^H v (|K| entries).
CVector qh_matvec(const FourierWorkspace& ws, const Shape& L, const Shape& K, const CVector& v,
                  Direction dir);

/// Grid array with entry (k,l) = sum over l_i +- k_j = (k,l) of U_i V_j.
/// No conjugation is applied to either argument.
CMatrix diagsums(const CVector& U, const CVector& V, const Shape& L, const Shape& K, int nx, int ny);

/// Number of trajectory-matrix entries mapped to each grid cell.
RMatrix qh_weights(const Shape& L, const Shape& K, int nx, int ny);

/// Diagonal averaging of U V^T: diagsums(U, V) / weights on cells with
/// positive weight. The returned shape is the effective support.
ShapedArray qh_hankelize(const CVector& U, const CVector& V, const Shape& L, const Shape& K,
                         const RMatrix& weights);

// 1D specializations on plain vectors.

/// Hankel(series) times v, where the Hankel matrix is out_len x (N - out_len + 1).
/// Passing v of length L and out_len = K gives the transposed product.
CVector hankel_matvec(const CVector& series, const CVector& v, Eigen::Index out_len);

/// Diagonal counts (1, 2, ..., min(L,K), ..., 2, 1) of an L x K Hankel matrix.
RVector hankel_weights(Eigen::Index L, Eigen::Index K);

/// Diagonal averages of U V^T, length L + K - 1.
CVector rank_one_hankelize(const CVector& U, const CVector& V);

}  // namespace shssa
