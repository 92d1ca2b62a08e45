#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "shssa/embedding.hpp"
#include "shssa/lanczos.hpp"

namespace shssa {

enum class SvdMethod { automatic, gram, truncated };

const char* method_name(SvdMethod m);
SvdMethod parse_method(const std::string& s);

struct DecomposeOptions {
    SvdMethod method = SvdMethod::automatic;
    double rank_eps = 1e-9;  // numeric rank threshold relative to sigma_1
    double tol = 1e-10;      // truncated path residual tolerance relative to sigma_1
    int max_restarts = 0;    // truncated path; 0 means 10 * neig
    std::uint64_t seed = 0x5eed5eedULL;
};

/// gram when L <= 200 or neig > L/2, truncated otherwise; explicit choices win.
SvdMethod select_method(const EmbeddingPlan& plan, int neig, SvdMethod requested);

/// Ordered eigentriples (sigma_j, U_j, V_j) of a trajectory operator.
///
/// U_j are unit left vectors with their largest-magnitude entry rotated to be
/// positive real; V_j = T^H U_j / sigma_j (zero when sigma_j = 0).
/// Elementary reconstructions are memoized behind a mutex, so const access
/// is safe from several threads.
class Decomposition {
public:
    Decomposition(PlanPtr plan, SvdMethod method, DecomposeOptions opts);

    const EmbeddingPlan& plan() const { return *plan_; }
    const PlanPtr& plan_ptr() const { return plan_; }
    SvdMethod method() const { return method_; }
    const DecomposeOptions& options() const { return opts_; }

    int size() const { return int(sigma_.size()); }
    const RVector& sigma() const { return sigma_; }
    const CMatrix& U() const { return U_; }
    const CMatrix& V() const { return V_; }
    double lambda(int j) const { return sigma_[j] * sigma_[j]; }

    /// Elementary reconstruction of triple j (0-based) on the packed grid,
    /// zero outside the covered cells.
    const CMatrix& elementary(int j) const;

    // Used by decompose/extend and the persistence layer.
    void append(const RVector& sigma, const CMatrix& U, const CMatrix& V);
    void set_gram_basis(std::shared_ptr<const CMatrix> basis) { gram_basis_ = std::move(basis); }
    const std::shared_ptr<const CMatrix>& gram_basis() const { return gram_basis_; }

private:
    struct Cache;
    PlanPtr plan_;
    SvdMethod method_;
    DecomposeOptions opts_;
    RVector sigma_;
    CMatrix U_, V_;
    std::shared_ptr<const CMatrix> gram_basis_;  // all eigenvectors of T T^H, descending
    std::shared_ptr<Cache> cache_;
};

/// Leading neig eigentriples. Requires 1 <= neig <= min(L, K).
Decomposition decompose(PlanPtr plan, int neig, const DecomposeOptions& opts = {});

/// Appends triples until neig are available. Existing triples are kept as is.
void extend(Decomposition& d, int neig);

/// Count of sigma_j > eps * sigma_1 among computed triples (eps < 0: use the
/// decomposition's configured threshold).
int numeric_rank(const Decomposition& d, double eps = -1);

struct EigenRow {
    int index;       // 1-based
    double sigma;
    double lambda;
    double share;    // lambda / ||X||_F^2
};
std::vector<EigenRow> eigenvalue_table(const Decomposition& d);

/// ||X||_F^2 = sum of squared trajectory entries = sum_cells w * |x|^2.
double trajectory_norm2(const EmbeddingPlan& plan);

/// Columns V_j for the given 0-based indices.
CMatrix factor_vectors(const Decomposition& d, const std::vector<int>& indices);

/// Operator view of the plan's trajectory matrix.
LinearOperator trajectory_operator(const PlanPtr& plan);

/// Rotates v so its largest-magnitude entry is positive real; returns the
/// applied unit factor.
Complex fix_phase(CVector& v);

}  // namespace shssa
