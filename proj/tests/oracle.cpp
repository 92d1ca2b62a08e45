#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "shssa/embedding.hpp"
#include "shssa/reconstruction.hpp"

namespace oracle {

using shssa::Complex;
using shssa::IndexPair;

CVector naive_dft(const CVector& v) {
    Eigen::Index n = v.size();
    CVector out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex s = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            // Reduce j*k mod n first so the angle stays accurate for long inputs.
            double a = -2 * std::numbers::pi * double((j * k) % n) / double(n);
            s += v[j] * Complex(std::cos(a), std::sin(a));
        }
        out[k] = s;
    }
    return out;
}

CMatrix quasi_hankel(const CMatrix& grid, const Shape& L, const Shape& K) {
    CMatrix T(Eigen::Index(L.size()), Eigen::Index(K.size()));
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < K.size(); ++j) {
            IndexPair c = shssa::shifted_sum(L[i], K[j]);
            T(Eigen::Index(i), Eigen::Index(j)) = grid(c.x - 1, c.y - 1);
        }
    return T;
}

CMatrix hankel(const CVector& x, int L) {
    Eigen::Index K = x.size() - L + 1;
    CMatrix H(L, K);
    for (Eigen::Index i = 0; i < L; ++i)
        for (Eigen::Index j = 0; j < K; ++j) H(i, j) = x[i + j];
    return H;
}

CMatrix hankelize(const CMatrix& Y, const Shape& L, const Shape& K, int nx, int ny) {
    CMatrix sum = CMatrix::Zero(nx, ny);
    RMatrix cnt = RMatrix::Zero(nx, ny);
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < K.size(); ++j) {
            IndexPair c = shssa::shifted_sum(L[i], K[j]);
            sum(c.x - 1, c.y - 1) += Y(Eigen::Index(i), Eigen::Index(j));
            cnt(c.x - 1, c.y - 1) += 1;
        }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index c = 0; c < sum.size(); ++c)
        sum.data()[c] = cnt.data()[c] > 0 ? sum.data()[c] / cnt.data()[c] : Complex(nan, nan);
    return sum;
}

RMatrix weights(const Shape& L, const Shape& K, int nx, int ny) {
    RMatrix w = RMatrix::Zero(nx, ny);
    for (const auto& l : L)
        for (const auto& k : K) {
            IndexPair c = shssa::shifted_sum(l, k);
            w(c.x - 1, c.y - 1) += 1;
        }
    return w;
}

Shape k_shape(const Shape& L, const Shape& N) {
    std::vector<IndexPair> out;
    for (int y = 1; y <= N.box_y(); ++y)
        for (int x = 1; x <= N.box_x(); ++x) {
            bool ok = !L.empty();
            for (const auto& l : L)
                if (!N.contains(shssa::shifted_sum(l, {x, y}))) {
                    ok = false;
                    break;
                }
            if (ok) out.push_back({x, y});
        }
    return Shape(out);
}

Shape minkowski(const Shape& A, const Shape& B) {
    std::vector<IndexPair> out;
    for (const auto& a : A)
        for (const auto& b : B) out.push_back(shssa::shifted_sum(a, b));
    return Shape(out);
}

namespace {

// Dense X_hat = P P^H X for the group, and the group's left basis.
CMatrix projected(const shssa::Decomposition& d, const std::vector<int>& group, CMatrix& P) {
    P.resize(d.U().rows(), Eigen::Index(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) P.col(Eigen::Index(i)) = d.U().col(group[i]);
    CMatrix X = shssa::materialize(d.plan());
    return P * (P.adjoint() * X);
}

// Orthogonal projector onto the column span of A.
CMatrix projector(const CMatrix& A) {
    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-12 * svd.singularValues()[0]) ++r;
    CMatrix Q = svd.matrixU().leftCols(r);
    return Q * Q.adjoint();
}

// Diagonal averages of a (rows x cols) matrix, first `keep` values.
CVector diag_average(const CMatrix& Z, Eigen::Index keep) {
    CVector out(keep);
    for (Eigen::Index t = 0; t < keep; ++t) {
        Complex s = 0;
        int n = 0;
        for (Eigen::Index i = 0; i < Z.rows(); ++i) {
            Eigen::Index j = t - i;
            if (j >= 0 && j < Z.cols()) {
                s += Z(i, j);
                ++n;
            }
        }
        out[t] = s / double(n);
    }
    return out;
}

}  // namespace

std::vector<CVector> vector_forecast_column(const shssa::Decomposition& d, const std::vector<int>& group, int M) {
    const auto& p = d.plan();
    CMatrix P;
    CMatrix Xh = projected(d, group, P);
    Eigen::Index L = P.rows();
    CMatrix Pu = P.topRows(L - 1);
    CMatrix Pi = projector(Pu);
    // LRR coefficients: last coordinate as a function of the first L-1.
    CVector pi = P.row(L - 1).transpose();
    double nu2 = pi.squaredNorm();
    CVector R = Pu.conjugate() * pi / (1 - nu2);
    std::vector<CVector> out;
    for (const auto& s : p.series) {
        Eigen::Index total = s.k + M + L - 1;
        CMatrix Z(L, total);
        Z.leftCols(s.k) = Xh.middleCols(s.k_offset, s.k);
        for (Eigen::Index k = s.k; k < total; ++k) {
            CVector tail = Z.col(k - 1).tail(L - 1);
            CVector head = Pi * tail;
            Z.col(k).head(L - 1) = head;
            Z(L - 1, k) = (R.transpose() * head)(0);
        }
        CVector z = diag_average(Z, s.length + M) * s.norm;
        if (p.field == shssa::Field::real) z.imag().setZero();
        out.push_back(z);
    }
    return out;
}

std::vector<CVector> vector_forecast_row(const shssa::Decomposition& d, const std::vector<int>& group, int M) {
    const auto& p = d.plan();
    CMatrix P;
    CMatrix Xh = projected(d, group, P);
    Eigen::Index L = Xh.rows(), K = Xh.cols(), s = Eigen::Index(p.series.size());
    // Row space of X_hat, with an explicit basis from its SVD.
    CMatrix Yt = Xh.transpose();  // K x L: columns are the rows of X_hat
    Eigen::JacobiSVD<CMatrix> svd(Yt, Eigen::ComputeThinU);
    Eigen::Index r = Eigen::Index(group.size());
    CMatrix Q = svd.matrixU().leftCols(r);
    // Index sets: "known" coordinates (all but the last of each block) and
    // "shifted" coordinates (all but the first).
    std::vector<Eigen::Index> known, shifted, last;
    for (const auto& si : p.series) {
        for (int j = 0; j + 1 < si.k; ++j) known.push_back(si.k_offset + j);
        for (int j = 1; j < si.k; ++j) shifted.push_back(si.k_offset + j);
        last.push_back(si.k_offset + si.k - 1);
    }
    auto rows = [](const CMatrix& A, const std::vector<Eigen::Index>& idx) {
        CMatrix out(Eigen::Index(idx.size()), A.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) out.row(Eigen::Index(i)) = A.row(idx[i]);
        return out;
    };
    CMatrix Qk = rows(Q, known), S = rows(Q, last);
    CMatrix Pi = projector(Qk);
    CMatrix G = CMatrix::Identity(s, s) - S * S.adjoint();
    CMatrix Rk = G.inverse() * S * Qk.adjoint();
    int kstar = 0;
    for (const auto& si : p.series) kstar = std::max(kstar, si.k);
    Eigen::Index total = L + M + kstar - 1;
    CMatrix Z(K, total);
    Z.leftCols(L) = Yt;
    for (Eigen::Index i = L; i < total; ++i) {
        CVector prev = Z.col(i - 1);
        CVector f(Eigen::Index(shifted.size()));
        for (std::size_t j = 0; j < shifted.size(); ++j) f[Eigen::Index(j)] = prev[shifted[j]];
        CVector a = Pi * f;
        CVector m = Rk * f;
        CVector next(K);
        for (std::size_t j = 0; j < known.size(); ++j) next[known[j]] = a[Eigen::Index(j)];
        for (std::size_t j = 0; j < last.size(); ++j) next[last[j]] = m[Eigen::Index(j)];
        Z.col(i) = next;
    }
    std::vector<CVector> out;
    for (const auto& si : p.series) {
        CMatrix Zp = Z.middleRows(si.k_offset, si.k).transpose();  // total x K_p
        CVector z = diag_average(Zp, si.length + M) * si.norm;
        if (p.field == shssa::Field::real) z.imag().setZero();
        out.push_back(z);
    }
    return out;
}

CMatrix shift_svd(const CMatrix& A, const CMatrix& B) {
    return A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(B);
}

Shape random_shape(std::mt19937_64& g, int nx, int ny, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<IndexPair> out;
    for (int y = 1; y <= ny; ++y)
        for (int x = 1; x <= nx; ++x)
            if (keep(g)) out.push_back({x, y});
    return Shape(out);
}

Shape random_window(std::mt19937_64& g, int lx, int ly, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<IndexPair> out{{1, 1}};
    for (int y = 1; y <= ly; ++y)
        for (int x = 1; x <= lx; ++x)
            if (keep(g)) out.push_back({x, y});
    return Shape(out);
}

CVector random_cvector(std::mt19937_64& g, Eigen::Index n, bool complex) {
    std::normal_distribution<double> nd;
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(nd(g), complex ? nd(g) : 0.0);
    return v;
}

CMatrix random_cmatrix(std::mt19937_64& g, Eigen::Index r, Eigen::Index c, bool complex) {
    CVector v = random_cvector(g, r * c, complex);
    return Eigen::Map<CMatrix>(v.data(), r, c);
}

Shape notched_l() { return Shape({{2, 1}, {3, 1}, {1, 2}, {2, 2}, {3, 2}}); }

Shape notched_n() {
    Shape K({{1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
             {3, 2}, {3, 3}, {3, 4}, {3, 5}, {3, 6}, {4, 3}, {4, 4}});
    auto cells = minkowski(K, notched_l()).elements();
    cells.push_back({3, 8});
    cells.push_back({4, 8});
    return Shape(cells);
}

double rel_err(const CMatrix& a, const CMatrix& b) {
    double nb = b.norm();
    return nb > 0 ? (a - b).norm() / nb : (a - b).norm();
}

}  // namespace oracle
