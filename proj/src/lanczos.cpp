#include "shssa/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "shssa/errors.hpp"

namespace shssa {
namespace {

// Classical Gram-Schmidt, run twice. Returns the accumulated coefficients.
CVector orthogonalize(const CMatrix& Q, Eigen::Index cols, CVector& w) {
    CVector c = CVector::Zero(cols);
    if (cols == 0) return c;
    for (int pass = 0; pass < 2; ++pass) {
        CVector h = Q.leftCols(cols).adjoint() * w;
        w -= Q.leftCols(cols) * h;
        c += h;
    }
    return c;
}

class Rng {
public:
    Rng(std::uint64_t seed, bool real) : gen_(seed), real_(real) {}
    CVector vector(Eigen::Index n) {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = Complex(nd_(gen_), real_ ? 0.0 : nd_(gen_));
        return v;
    }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> nd_;
    bool real_;
};

// Unit vector orthogonal to the first `cols` columns of Q; used after breakdown.
CVector fresh_direction(Rng& rng, const CMatrix& Q, Eigen::Index cols) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        CVector w = rng.vector(Q.rows());
        orthogonalize(Q, cols, w);
        double n = w.norm();
        if (n > 1e-8) return w / n;
    }
    throw ComputeError("lanczos_breakdown", "could not extend the Krylov basis");
}

struct SmallSvd {
    RVector s;
    CMatrix P;
    CMatrix Q;
};

SmallSvd small_svd(const CMatrix& B, bool real) {
    if (real) {
        Eigen::JacobiSVD<RMatrix> svd(B.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        return {svd.singularValues(), svd.matrixU().cast<Complex>(), svd.matrixV().cast<Complex>()};
    }
    Eigen::JacobiSVD<CMatrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

}  // namespace

SvdTriples truncated_svd(const LinearOperator& A, int k, const LanczosOptions& opt) {
    const Eigen::Index m = A.rows, n = A.cols;
    const Eigen::Index minmn = std::min(m, n);
    if (k < 1 || k > minmn)
        throw ValidationError("neig_range", "requested " + std::to_string(k) +
                                                " triples, operator allows at most " +
                                                std::to_string(minmn));
    Eigen::Index mb = opt.work > 0 ? opt.work : std::max<Eigen::Index>(2 * k + 10, k + 20);
    mb = std::min(std::max<Eigen::Index>(mb, k), minmn);
    const int max_restarts = opt.max_restarts > 0 ? opt.max_restarts : 10 * k;

    Rng rng(opt.seed, A.real);
    CMatrix U = CMatrix::Zero(m, mb), V = CMatrix::Zero(n, mb), B = CMatrix::Zero(mb, mb);
    V.col(0) = rng.vector(n).normalized();
    Eigen::Index kept = 0;
    double scale = 0;  // largest recurrence coefficient seen, for breakdown tests
    CVector f = CVector::Zero(n);
    double fnorm = 0;
    SmallSvd svd;
    RVector res;

    SvdTriples out;
    for (int restart = 0;; ++restart) {
        for (Eigen::Index j = kept; j < mb; ++j) {
            CVector w = A.apply(V.col(j));
            B.col(j).head(j) = orthogonalize(U, j, w);
            double alpha = w.norm();
            scale = std::max(scale, alpha);
            if (alpha <= 1e-14 * scale || alpha == 0.0) {
                U.col(j) = fresh_direction(rng, U, j);
                alpha = 0;
            } else {
                U.col(j) = w / alpha;
            }
            B(j, j) = alpha;
            CVector r = A.apply_adjoint(U.col(j));
            orthogonalize(V, j + 1, r);
            double beta = r.norm();
            scale = std::max(scale, beta);
            if (j + 1 < mb) {
                if (beta <= 1e-14 * scale || beta == 0.0) {
                    V.col(j + 1) = fresh_direction(rng, V, j + 1);
                    beta = 0;
                } else {
                    V.col(j + 1) = r / beta;
                }
                B(j, j + 1) = beta;
            } else {
                f = r;
                fnorm = beta;
            }
        }
        svd = small_svd(B, A.real);
        res = fnorm * svd.P.row(mb - 1).cwiseAbs().transpose();
        double limit = opt.tol * svd.s[0];
        int conv = 0;
        while (conv < k && res[conv] <= limit) ++conv;
        out.restarts = restart;
        out.converged = conv;
        if (conv == k) break;
        if (restart >= max_restarts)
            throw ComputeError("no_convergence", "truncated decomposition converged " +
                                                     std::to_string(conv) + " of " +
                                                     std::to_string(k) + " triples after " +
                                                     std::to_string(restart) + " restarts");
        // Thick restart: keep the leading Ritz vectors plus a few extra.
        Eigen::Index keep = std::min<Eigen::Index>(mb - 1, k + (mb - k) / 4);
        CMatrix Vn = V * svd.Q.leftCols(keep), Un = U * svd.P.leftCols(keep);
        V.leftCols(keep) = Vn;
        U.leftCols(keep) = Un;
        B.setZero();
        for (Eigen::Index i = 0; i < keep; ++i) B(i, i) = svd.s[i];
        if (fnorm <= 1e-14 * scale || fnorm == 0.0) {
            V.col(keep) = fresh_direction(rng, V, keep);
        } else {
            CVector v = f / fnorm;
            orthogonalize(V, keep, v);
            V.col(keep) = v.normalized();
        }
        kept = keep;
    }
    out.sigma = svd.s.head(k);
    out.U = U * svd.P.leftCols(k);
    out.V = V * svd.Q.leftCols(k);
    out.residuals = res.head(k);
    if (A.real) {
        out.U.imag().setZero();
        out.V.imag().setZero();
    }
    return out;
}

LinearOperator deflate(const LinearOperator& A, const RVector& sigma, const CMatrix& U,
                       const CMatrix& V) {
    LinearOperator D = A;
    CMatrix US = U * sigma.cast<Complex>().asDiagonal();
    CMatrix VS = V * sigma.cast<Complex>().asDiagonal();
    D.apply = [A, US, V](const CVector& x) -> CVector {
        return A.apply(x) - US * (V.adjoint() * x);
    };
    D.apply_adjoint = [A, VS, U](const CVector& y) -> CVector {
        return A.apply_adjoint(y) - VS * (U.adjoint() * y);
    };
    return D;
}

}  // namespace shssa
