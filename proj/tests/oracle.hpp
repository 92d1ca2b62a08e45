#pragma once

// Independent dense and brute-force reference implementations used by the
// unit and acceptance tests. Nothing here goes through the FFT kernels.

#include <random>
#include <vector>

#include "shssa/decomposition.hpp"
#include "shssa/shape.hpp"

namespace oracle {

using shssa::CMatrix;
using shssa::CVector;
using shssa::RMatrix;
using shssa::RVector;
using shssa::Shape;

/// O(N^2) DFT with the e^{-2 pi i jk/N} convention.
CVector naive_dft(const CVector& v);

/// Dense L x K matrix with entries grid(l_i +- k_j).
CMatrix quasi_hankel(const CMatrix& grid, const Shape& L, const Shape& K);
/// 1D Hankel matrix of x with window L.
CMatrix hankel(const CVector& x, int L);

/// Diagonal averaging of Y over cells l_i +- k_j; NaN where no entry lands.
CMatrix hankelize(const CMatrix& Y, const Shape& L, const Shape& K, int nx, int ny);

/// Entry counts per cell.
RMatrix weights(const Shape& L, const Shape& K, int nx, int ny);

/// All origins k in N's bounding box with L +- {k} inside N.
Shape k_shape(const Shape& L, const Shape& N);
Shape minkowski(const Shape& A, const Shape& B);

/// Vector forecasts by explicit projector iteration on the dense trajectory
/// matrix. Returns z_1..z_{N_p+M} per series.
std::vector<CVector> vector_forecast_column(const shssa::Decomposition& d, const std::vector<int>& group, int M);
std::vector<CVector> vector_forecast_row(const shssa::Decomposition& d, const std::vector<int>& group, int M);

/// Shift matrix through an explicit least-squares solve by SVD.
CMatrix shift_svd(const CMatrix& A, const CMatrix& B);

/// Random shape on an nx x ny grid; each cell kept with probability p.
Shape random_shape(std::mt19937_64& g, int nx, int ny, double p);
/// Random nonempty window fitting an lx x ly box, containing (1,1).
Shape random_window(std::mt19937_64& g, int lx, int ly, double p);

CVector random_cvector(std::mt19937_64& g, Eigen::Index n, bool complex);
CMatrix random_cmatrix(std::mt19937_64& g, Eigen::Index r, Eigen::Index c, bool complex);

/// Notched array inside a 6 x 8 box and a 3 x 2 window without its (1,1)
/// cell. Two extra array cells, (3,8) and (4,8), are not reachable by any
/// window placement.
Shape notched_n();
Shape notched_l();

double rel_err(const CMatrix& a, const CMatrix& b);

}  // namespace oracle
