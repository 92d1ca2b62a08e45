#pragma once

#include <cstdint>
#include <functional>

#include "shssa/types.hpp"

namespace shssa {

/// Matrix-free m x n operator.
struct LinearOperator {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::function<CVector(const CVector&)> apply;          // n -> m
    std::function<CVector(const CVector&)> apply_adjoint;  // m -> n
    /// Real operator: real inputs give real outputs, so the iteration stays real.
    bool real = true;
};

struct LanczosOptions {
    /// Stop when ||A^H u - sigma v|| <= tol * sigma_1 for every wanted triple.
    double tol = 1e-10;
    /// Restart cap; 0 means 10 * k.
    int max_restarts = 0;
    /// Krylov basis size; 0 picks max(2k + 10, k + 20), clipped to min(m, n).
    int work = 0;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct SvdTriples {
    RVector sigma;
    CMatrix U;  // m x k
    CMatrix V;  // n x k
    int restarts = 0;
    int converged = 0;
    RVector residuals;  // estimated ||A^H u_i - sigma_i v_i||
};

/// Leading k singular triples by thick-restarted Golub-Kahan-Lanczos
/// bidiagonalization with full reorthogonalization.
/// Throws ComputeError("no_convergence") if the restart cap is reached.
SvdTriples truncated_svd(const LinearOperator& A, int k, const LanczosOptions& opt = {});

/// A - U diag(sigma) V^H without forming anything dense.
LinearOperator deflate(const LinearOperator& A, const RVector& sigma, const CMatrix& U,
                       const CMatrix& V);

}  // namespace shssa
