#include "shssa/forecast.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "shssa/errors.hpp"
#include "shssa/fourier.hpp"
#include "shssa/reconstruction.hpp"

namespace shssa {
namespace {

void check_plan(const Decomposition& d) {
    const auto& p = d.plan();
    if (!p.is_series())
        throw ValidationError("forecast_variant", std::string("forecasting is defined for 1d-ssa, ") +
                                                      "mssa and cssa, not " + variant_name(p.variant));
    int L = int(p.L());
    for (const auto& s : p.series)
        if (s.k != s.length - L + 1)
            throw ValidationError("forecast_gaps", "series '" + s.name +
                                                       "' has interior missing values; cannot forecast");
}

void check_group(const Decomposition& d, const std::vector<int>& group) {
    if (group.empty()) throw ValidationError("group_empty", "forecast group is empty");
    for (int j : group)
        if (j < 0 || j >= d.size())
            throw ValidationError("index_range", "eigentriple " + std::to_string(j + 1) +
                                                     " is not computed");
}

CMatrix left_basis(const Decomposition& d, const std::vector<int>& group) {
    CMatrix P(d.U().rows(), Eigen::Index(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) P.col(Eigen::Index(i)) = d.U().col(group[i]);
    return P;
}

// Row space basis: rows of sum sigma U V^H lie in span(conj V).
CMatrix right_basis(const Decomposition& d, const std::vector<int>& group) {
    CMatrix Q(d.V().rows(), Eigen::Index(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (!(d.sigma()[group[i]] > 0))
            throw ComputeError("zero_sigma", "eigentriple " + std::to_string(group[i] + 1) +
                                                 " has zero singular value");
        Q.col(Eigen::Index(i)) = d.V().col(group[i]).conjugate();
    }
    return Q;
}

RVector group_sigma(const Decomposition& d, const std::vector<int>& group) {
    RVector s(Eigen::Index(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) s[Eigen::Index(i)] = d.sigma()[group[i]];
    return s;
}

std::vector<std::pair<int, int>> series_blocks(const EmbeddingPlan& p) {
    std::vector<std::pair<int, int>> b;
    for (const auto& s : p.series) b.push_back({s.k_offset, s.k});
    return b;
}

// Reconstructed series in the normalized scale used for embedding.
std::vector<CVector> recon_series(const Decomposition& d, const std::vector<int>& group) {
    CMatrix g = reconstruct_indices(d, group);
    std::vector<CVector> out;
    for (const auto& s : d.plan().series) out.push_back(g.col(s.y).segment(s.x0, s.length));
    return out;
}

ForecastResult package(const Decomposition& d, ForecastKind kind, ForecastDir dir, int M,
                       std::vector<CVector> extended) {
    ForecastResult r;
    r.kind = kind;
    r.dir = dir;
    r.M = M;
    const auto& p = d.plan();
    for (std::size_t i = 0; i < p.series.size(); ++i) {
        const auto& s = p.series[i];
        extended[i] *= s.norm;
        if (p.field == Field::real) extended[i].imag().setZero();
        r.names.push_back(s.name);
        r.forecast.push_back(extended[i].tail(M));
        r.extended.push_back(std::move(extended[i]));
    }
    return r;
}

void check_M(int M) {
    if (M < 1) throw ValidationError("horizon", "forecast horizon must be >= 1");
}

// (I - S S^H) with its condition number checked.
CMatrix gate(const CMatrix& S, double max_cond) {
    CMatrix G = CMatrix::Identity(S.rows(), S.rows()) - S * S.adjoint();
    Eigen::JacobiSVD<CMatrix> svd(G);
    double smax = svd.singularValues()[0], smin = svd.singularValues()[svd.singularValues().size() - 1];
    double cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= max_cond))
        throw ComputeError("row_gating", "I - S S^T is singular (condition number " +
                                             std::to_string(cond) + ")");
    return G;
}

CMatrix drop_rows(const CMatrix& Q, const std::vector<std::pair<int, int>>& blocks, bool drop_last) {
    Eigen::Index n = 0;
    for (auto [off, len] : blocks) n += len - 1;
    CMatrix out(n, Q.cols());
    Eigen::Index r = 0;
    for (auto [off, len] : blocks) {
        out.middleRows(r, len - 1) = Q.middleRows(drop_last ? off : off + 1, len - 1);
        r += len - 1;
    }
    return out;
}

CMatrix last_rows(const CMatrix& Q, const std::vector<std::pair<int, int>>& blocks) {
    CMatrix S(Eigen::Index(blocks.size()), Q.cols());
    for (std::size_t p = 0; p < blocks.size(); ++p)
        S.row(Eigen::Index(p)) = Q.row(blocks[p].first + blocks[p].second - 1);
    return S;
}

}  // namespace

const char* forecast_name(ForecastKind k, ForecastDir d) {
    if (k == ForecastKind::recurrent) return d == ForecastDir::column ? "recurrent-column" : "recurrent-row";
    return d == ForecastDir::column ? "vector-column" : "vector-row";
}

CMatrix pinv_solve(const CMatrix& A, const CMatrix& B) {
    Eigen::ColPivHouseholderQR<CMatrix> qr(A);
    qr.setThreshold(1e-12);
    return qr.solve(B);
}

CMatrix shift_matrix(const CMatrix& P) {
    Eigen::Index L = P.rows();
    return pinv_solve(P.topRows(L - 1), P.bottomRows(L - 1));
}

CMatrix shift_matrix_orthonormal(const CMatrix& P) {
    Eigen::Index L = P.rows(), r = P.cols();
    CVector pi = P.row(L - 1).transpose();
    double nu2 = pi.squaredNorm();
    CMatrix C = CMatrix::Identity(r, r) + pi.conjugate() * pi.transpose() / (1.0 - nu2);
    return C * (P.topRows(L - 1).adjoint() * P.bottomRows(L - 1));
}

CMatrix shift_matrix_blocks(const CMatrix& Q, const std::vector<std::pair<int, int>>& blocks) {
    return pinv_solve(drop_rows(Q, blocks, true), drop_rows(Q, blocks, false));
}

CMatrix shift_matrix_blocks_orthonormal(const CMatrix& Q, const std::vector<std::pair<int, int>>& blocks) {
    Eigen::Index r = Q.cols();
    CMatrix S = last_rows(Q, blocks);
    CMatrix G = CMatrix::Identity(S.rows(), S.rows()) - S * S.adjoint();
    CMatrix C = CMatrix::Identity(r, r) + S.adjoint() * G.partialPivLu().solve(S);
    return C * (drop_rows(Q, blocks, true).adjoint() * drop_rows(Q, blocks, false));
}

CVector hankelize_factored(const CMatrix& P, const CMatrix& W) {
    Eigen::Index L = P.rows(), K = W.cols(), n = L + K - 1;
    if (P.cols() != W.rows()) throw ValidationError("size_mismatch", "P and W ranks differ");
    CVector acc = CVector::Zero(n);
    CVector a = CVector::Zero(n), b = CVector::Zero(n);
    for (Eigen::Index i = 0; i < P.cols(); ++i) {
        a.setZero();
        b.setZero();
        a.head(L) = P.col(i);
        b.head(K) = W.row(i).transpose();
        acc += fft::dft(a).cwiseProduct(fft::dft(b));
    }
    CVector z = fft::idft(acc);
    for (Eigen::Index t = 0; t < n; ++t) {
        Eigen::Index w = std::min({t + 1, L, K, n - t});
        z[t] /= double(w);
    }
    return z;
}

LrrColumn build_lrr_column(const Decomposition& d, const std::vector<int>& group,
                           const ForecastOptions& opt) {
    check_plan(d);
    check_group(d, group);
    CMatrix P = left_basis(d, group);
    Eigen::Index L = P.rows();
    CVector pi = P.row(L - 1).transpose();
    LrrColumn lrr;
    lrr.nu2 = pi.squaredNorm();
    if (lrr.nu2 >= 1.0 - opt.nu_eps)
        throw ComputeError("verticality", "verticality coefficient nu^2 = " + std::to_string(lrr.nu2) +
                                              " is too close to 1");
    // x_L = pi^T P_u^H z / (1 - nu^2)
    lrr.coef = P.topRows(L - 1).conjugate() * pi / (1.0 - lrr.nu2);
    return lrr;
}

LrrRow build_lrr_row(const Decomposition& d, const std::vector<int>& group, const ForecastOptions& opt) {
    check_plan(d);
    check_group(d, group);
    const auto& p = d.plan();
    auto blocks = series_blocks(p);
    Eigen::Index s = Eigen::Index(blocks.size()), K = Eigen::Index(p.K());
    if (Eigen::Index(group.size()) > K - s)
        throw ValidationError("row_rank", "row forecast needs r <= K - s");
    CMatrix Q = right_basis(d, group);
    LrrRow lrr;
    lrr.S = last_rows(Q, blocks);
    CMatrix G = gate(lrr.S, opt.max_cond);
    lrr.R = G.partialPivLu().solve(lrr.S * drop_rows(Q, blocks, true).adjoint());
    return lrr;
}

ForecastResult recurrent_forecast_column(const Decomposition& d, const std::vector<int>& group, int M,
                                         const ForecastOptions& opt) {
    check_M(M);
    LrrColumn lrr = build_lrr_column(d, group, opt);
    Eigen::Index L1 = lrr.coef.size();
    auto series = recon_series(d, group);
    std::vector<CVector> ext;
    for (const auto& x : series) {
        Eigen::Index N = x.size();
        CVector z(N + M);
        z.head(N) = x;
        for (Eigen::Index t = N; t < N + M; ++t)
            z[t] = (lrr.coef.transpose() * z.segment(t - L1, L1))(0);
        ext.push_back(std::move(z));
    }
    return package(d, ForecastKind::recurrent, ForecastDir::column, M, std::move(ext));
}

ForecastResult recurrent_forecast_row(const Decomposition& d, const std::vector<int>& group, int M,
                                      const ForecastOptions& opt) {
    check_M(M);
    LrrRow lrr = build_lrr_row(d, group, opt);
    auto series = recon_series(d, group);
    const auto& info = d.plan().series;
    std::vector<CVector> ext;
    for (const auto& x : series) {
        CVector z(x.size() + M);
        z.head(x.size()) = x;
        ext.push_back(std::move(z));
    }
    CVector Z(lrr.R.cols());
    for (int step = 0; step < M; ++step) {
        Eigen::Index r = 0;
        for (std::size_t p = 0; p < ext.size(); ++p) {
            Eigen::Index n = info[p].length + step, k1 = info[p].k - 1;
            Z.segment(r, k1) = ext[p].segment(n - k1, k1);
            r += k1;
        }
        CVector next = lrr.R * Z;
        for (std::size_t p = 0; p < ext.size(); ++p) ext[p][info[p].length + step] = next[Eigen::Index(p)];
    }
    return package(d, ForecastKind::recurrent, ForecastDir::row, M, std::move(ext));
}

ForecastResult vector_forecast_column(const Decomposition& d, const std::vector<int>& group, int M,
                                      const ForecastOptions& opt) {
    check_M(M);
    build_lrr_column(d, group, opt);  // verticality precondition
    const auto& p = d.plan();
    CMatrix P = left_basis(d, group);
    RVector sig = group_sigma(d, group);
    CMatrix D = shift_matrix(P);
    Eigen::Index L = P.rows(), r = P.cols();
    std::vector<CVector> ext;
    for (const auto& s : p.series) {
        Eigen::Index Kp = s.k, total = Kp + M + L - 1;
        CMatrix W(r, total);
        for (Eigen::Index i = 0; i < r; ++i)
            W.row(i).head(Kp) = sig[i] * d.V().col(group[std::size_t(i)]).segment(s.k_offset, Kp).adjoint();
        for (Eigen::Index k = Kp; k < total; ++k) W.col(k) = D * W.col(k - 1);
        CVector z = hankelize_factored(P, W);
        ext.push_back(z.head(s.length + M));
    }
    return package(d, ForecastKind::vector, ForecastDir::column, M, std::move(ext));
}

ForecastResult vector_forecast_row(const Decomposition& d, const std::vector<int>& group, int M,
                                   const ForecastOptions& opt) {
    check_M(M);
    build_lrr_row(d, group, opt);  // gating preconditions
    const auto& p = d.plan();
    auto blocks = series_blocks(p);
    CMatrix Q = right_basis(d, group);
    RVector sig = group_sigma(d, group);
    CMatrix D = shift_matrix_blocks(Q, blocks);
    Eigen::Index L = Eigen::Index(p.L()), r = Q.cols();
    int kstar = 0;
    for (const auto& s : p.series) kstar = std::max(kstar, s.k);
    Eigen::Index total = L + M + kstar - 1;
    CMatrix W(r, total);
    for (Eigen::Index i = 0; i < r; ++i)
        W.row(i).head(L) = sig[i] * d.U().col(group[std::size_t(i)]).transpose();
    for (Eigen::Index k = L; k < total; ++k) W.col(k) = D * W.col(k - 1);
    std::vector<CVector> ext;
    for (const auto& s : p.series) {
        CVector z = hankelize_factored(Q.middleRows(s.k_offset, s.k), W.leftCols(L + M + s.k - 1));
        ext.push_back(z.head(s.length + M));
    }
    return package(d, ForecastKind::vector, ForecastDir::row, M, std::move(ext));
}

ForecastResult forecast(const Decomposition& d, const std::vector<int>& group, int M, ForecastKind kind,
                        ForecastDir dir, const ForecastOptions& opt) {
    if (kind == ForecastKind::recurrent)
        return dir == ForecastDir::column ? recurrent_forecast_column(d, group, M, opt)
                                          : recurrent_forecast_row(d, group, M, opt);
    return dir == ForecastDir::column ? vector_forecast_column(d, group, M, opt)
                                      : vector_forecast_row(d, group, M, opt);
}

}  // namespace shssa
