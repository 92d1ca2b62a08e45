#include "shssa/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "shssa/errors.hpp"

namespace shssa {

struct Decomposition::Cache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const CMatrix>> items;
};

const char* method_name(SvdMethod m) {
    switch (m) {
        case SvdMethod::automatic: return "auto";
        case SvdMethod::gram: return "gram";
        case SvdMethod::truncated: return "truncated";
    }
    return "?";
}

SvdMethod parse_method(const std::string& s) {
    if (s == "auto") return SvdMethod::automatic;
    if (s == "gram" || s == "eigen") return SvdMethod::gram;
    if (s == "truncated" || s == "lanczos") return SvdMethod::truncated;
    throw ValidationError("svd_method", "unknown decomposition method '" + s + "'");
}

SvdMethod select_method(const EmbeddingPlan& plan, int neig, SvdMethod requested) {
    if (requested != SvdMethod::automatic) return requested;
    std::size_t L = plan.L();
    if (L <= 200 || std::size_t(neig) * 2 > L) return SvdMethod::gram;
    return SvdMethod::truncated;
}

Decomposition::Decomposition(PlanPtr plan, SvdMethod method, DecomposeOptions opts)
    : plan_(std::move(plan)), method_(method), opts_(opts), cache_(std::make_shared<Cache>()) {
    U_.resize(Eigen::Index(plan_->L()), 0);
    V_.resize(Eigen::Index(plan_->K()), 0);
}

void Decomposition::append(const RVector& sigma, const CMatrix& U, const CMatrix& V) {
    Eigen::Index n = sigma_.size(), add = sigma.size();
    RVector s(n + add);
    s << sigma_, sigma;
    CMatrix u(U_.rows(), n + add), v(V_.rows(), n + add);
    u << U_, U;
    v << V_, V;
    sigma_ = std::move(s);
    U_ = std::move(u);
    V_ = std::move(v);
}

const CMatrix& Decomposition::elementary(int j) const {
    if (j < 0 || j >= size())
        throw ValidationError("index_range", "eigentriple " + std::to_string(j + 1) + " not computed");
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (auto it = cache_->items.find(j); it != cache_->items.end()) return *it->second;
    }
    const auto& p = *plan_;
    CVector su = U_.col(j) * sigma_[j];
    CMatrix d = diagsums(su, V_.col(j).conjugate(), p.l_shape, p.k_shape, p.nx, p.ny);
    for (Eigen::Index c = 0; c < d.size(); ++c) {
        double w = p.weights.data()[c];
        d.data()[c] = w > 0 ? d.data()[c] / w : Complex(0.0);
    }
    if (p.field == Field::real) d.imag().setZero();
    auto item = std::make_shared<const CMatrix>(std::move(d));
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto [it, inserted] = cache_->items.emplace(j, std::move(item));
    return *it->second;
}

Complex fix_phase(CVector& v) {
    if (v.size() == 0) return 1.0;
    Eigen::Index imax = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > best * (1 + 1e-12)) {
            best = a;
            imax = i;
        }
    }
    if (best <= 0) return 1.0;
    Complex c = std::conj(v[imax]) / best;
    v *= c;
    v[imax] = Complex(v[imax].real(), 0.0);
    return c;
}

LinearOperator trajectory_operator(const PlanPtr& plan) {
    LinearOperator A;
    A.rows = Eigen::Index(plan->L());
    A.cols = Eigen::Index(plan->K());
    A.real = plan->field == Field::real;
    A.apply = [plan](const CVector& v) { return traj_matvec(*plan, v); };
    A.apply_adjoint = [plan](const CVector& u) { return traj_adjoint_matvec(*plan, u); };
    return A;
}

namespace {

// Canonical sign, then sigma = ||T^H U|| and V = T^H U / sigma. For null
// directions T^H U is at rounding level, which keeps the numeric rank sharp.
void finish_triples(const EmbeddingPlan& plan, CMatrix& U, RVector& sigma, CMatrix& V) {
    Eigen::Index k = U.cols();
    sigma.resize(k);
    V.resize(Eigen::Index(plan.K()), k);
    for (Eigen::Index j = 0; j < k; ++j) {
        CVector u = U.col(j);
        fix_phase(u);
        if (plan.field == Field::real) u.imag().setZero();
        U.col(j) = u;
        CVector v = traj_adjoint_matvec(plan, u);
        sigma[j] = v.norm();
        V.col(j) = sigma[j] > 0 ? CVector(v / sigma[j]) : CVector(CVector::Zero(v.size()));
    }
}

std::shared_ptr<const CMatrix> gram_basis(const EmbeddingPlan& plan) {
    Eigen::Index L = Eigen::Index(plan.L());
    CMatrix S(L, L);
    CVector e = CVector::Zero(L);
    for (Eigen::Index i = 0; i < L; ++i) {
        e[i] = 1.0;
        S.col(i) = traj_matvec(plan, traj_adjoint_matvec(plan, e));
        e[i] = 0.0;
    }
    CMatrix vecs;
    if (plan.field == Field::real) {
        RMatrix Sr = S.real();
        Sr = (Sr + Sr.transpose()).eval() * 0.5;
        Eigen::SelfAdjointEigenSolver<RMatrix> es(Sr);
        if (es.info() != Eigen::Success)
            throw ComputeError("eigen_failed", "Gram eigendecomposition failed");
        vecs = es.eigenvectors().rowwise().reverse().cast<Complex>();
    } else {
        S = (S + S.adjoint()).eval() * 0.5;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
        if (es.info() != Eigen::Success)
            throw ComputeError("eigen_failed", "Gram eigendecomposition failed");
        vecs = es.eigenvectors().rowwise().reverse();
    }
    return std::make_shared<const CMatrix>(std::move(vecs));
}

// Rounding can lift a recomputed sigma above its predecessor by an ulp or so.
void append_monotone(Decomposition& d, RVector s, const CMatrix& U, const CMatrix& V) {
    double prev = d.size() ? d.sigma()[d.size() - 1] : s.size() ? s[0] : 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        s[j] = std::min(s[j], prev);
        prev = s[j];
    }
    d.append(s, U, V);
}

void check_neig(const EmbeddingPlan& plan, int neig) {
    std::size_t lim = std::min(plan.L(), plan.K());
    if (neig < 1 || std::size_t(neig) > lim)
        throw ValidationError("neig_range", "neig = " + std::to_string(neig) + " outside [1, " +
                                                std::to_string(lim) + "] = [1, min(L, K)]");
}

void gram_fill(Decomposition& d, int neig) {
    if (!d.gram_basis()) d.set_gram_basis(gram_basis(d.plan()));
    int have = d.size();
    CMatrix U = d.gram_basis()->middleCols(have, neig - have);
    RVector s;
    CMatrix V;
    finish_triples(d.plan(), U, s, V);
    append_monotone(d, s, U, V);
}

void truncated_fill(Decomposition& d, int neig) {
    LinearOperator A = trajectory_operator(d.plan_ptr());
    if (d.size() > 0) A = deflate(A, d.sigma(), d.U(), d.V());
    LanczosOptions lo;
    lo.tol = d.options().tol;
    lo.max_restarts = d.options().max_restarts;
    lo.seed = d.options().seed + std::uint64_t(d.size());
    SvdTriples t = truncated_svd(A, neig - d.size(), lo);
    CMatrix U = t.U;
    RVector s;
    CMatrix V;
    finish_triples(d.plan(), U, s, V);
    append_monotone(d, s, U, V);
}

}  // namespace

Decomposition decompose(PlanPtr plan, int neig, const DecomposeOptions& opts) {
    check_neig(*plan, neig);
    SvdMethod m = select_method(*plan, neig, opts.method);
    Decomposition d(std::move(plan), m, opts);
    if (m == SvdMethod::gram) {
        gram_fill(d, neig);
    } else {
        truncated_fill(d, neig);
    }
    return d;
}

void extend(Decomposition& d, int neig) {
    if (neig <= d.size()) return;
    check_neig(d.plan(), neig);
    if (d.method() == SvdMethod::gram)
        gram_fill(d, neig);
    else
        truncated_fill(d, neig);
}

int numeric_rank(const Decomposition& d, double eps) {
    if (eps < 0) eps = d.options().rank_eps;
    if (d.size() == 0) return 0;
    double lim = eps * d.sigma()[0];
    int r = 0;
    for (int j = 0; j < d.size(); ++j)
        if (d.sigma()[j] > lim) ++r;
    return r;
}

double trajectory_norm2(const EmbeddingPlan& plan) {
    return (plan.weights.array() * plan.grid().cwiseAbs2().array()).sum();
}

std::vector<EigenRow> eigenvalue_table(const Decomposition& d) {
    double total = trajectory_norm2(d.plan());
    std::vector<EigenRow> rows;
    for (int j = 0; j < d.size(); ++j) {
        double l = d.lambda(j);
        rows.push_back({j + 1, d.sigma()[j], l, total > 0 ? l / total : 0.0});
    }
    return rows;
}

CMatrix factor_vectors(const Decomposition& d, const std::vector<int>& indices) {
    CMatrix out(d.V().rows(), Eigen::Index(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        int j = indices[i];
        if (j < 0 || j >= d.size())
            throw ValidationError("index_range", "eigentriple " + std::to_string(j + 1) +
                                                     " not computed");
        out.col(Eigen::Index(i)) = d.V().col(j);
    }
    return out;
}

}  // namespace shssa
