#include "shssa/reconstruction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "shssa/errors.hpp"

namespace shssa {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

int parse_index(const std::string& t) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); }))
        throw ValidationError("group_syntax", "'" + t + "' is not a positive integer");
    int v = std::stoi(t);
    if (v < 1) throw ValidationError("group_syntax", "eigentriple numbers start at 1");
    return v;
}

std::vector<int> zero_based(const std::vector<int>& one_based) {
    std::vector<int> out;
    for (int i : one_based) out.push_back(i - 1);
    return out;
}

CMatrix mark_missing(const EmbeddingPlan& plan, CMatrix g) {
    for (Eigen::Index c = 0; c < g.size(); ++c)
        if (plan.weights.data()[c] <= 0) g.data()[c] = Complex(kNaN, kNaN);
    return g;
}

}  // namespace

GroupSpec parse_groups(const std::string& text) {
    GroupSpec spec;
    if (trim(text).empty()) throw ValidationError("group_syntax", "empty group specification");
    auto parts = split(text, ';');
    for (std::size_t g = 0; g < parts.size(); ++g) {
        Group grp;
        std::string body = parts[g];
        if (auto eq = body.find('='); eq != std::string::npos) {
            grp.name = trim(body.substr(0, eq));
            body = body.substr(eq + 1);
            if (grp.name.empty()) throw ValidationError("group_syntax", "empty group name");
        } else {
            grp.name = "F" + std::to_string(g + 1);
        }
        for (const auto& item : split(body, ',')) {
            if (auto dash = item.find('-'); dash != std::string::npos) {
                int a = parse_index(trim(item.substr(0, dash)));
                int b = parse_index(trim(item.substr(dash + 1)));
                if (b < a) throw ValidationError("group_syntax", "descending range '" + item + "'");
                for (int i = a; i <= b; ++i) grp.indices.push_back(i);
            } else {
                grp.indices.push_back(parse_index(item));
            }
        }
        spec.groups.push_back(std::move(grp));
    }
    return spec;
}

GroupSpec elementary_groups(int n) {
    GroupSpec g;
    for (int i = 1; i <= n; ++i) g.groups.push_back({"F" + std::to_string(i), {i}});
    return g;
}

int max_index(const GroupSpec& g) {
    int m = 0;
    for (const auto& grp : g.groups)
        for (int i : grp.indices) m = std::max(m, i);
    return m;
}

CMatrix reconstruct_indices(const Decomposition& d, const std::vector<int>& indices) {
    const auto& p = d.plan();
    CMatrix sum = CMatrix::Zero(p.nx, p.ny);
    for (int j : indices) sum += d.elementary(j);
    return sum;
}

CMatrix original_grid(const EmbeddingPlan& plan) { return mark_missing(plan, plan.grid()); }

ReconstructionSet reconstruct(Decomposition& d, const GroupSpec& groups) {
    int need = max_index(groups);
    if (need > d.size()) extend(d, need);
    ReconstructionSet out{d.plan_ptr(), {}};
    CMatrix total = CMatrix::Zero(d.plan().nx, d.plan().ny);
    for (const auto& g : groups.groups) {
        CMatrix r = reconstruct_indices(d, zero_based(g.indices));
        total += r;
        out.items.push_back({g.name, mark_missing(d.plan(), std::move(r))});
    }
    if (groups.add_original) out.items.push_back({"Original", original_grid(d.plan())});
    if (groups.add_residual)
        out.items.push_back({"Residuals", mark_missing(d.plan(), d.plan().grid() - total)});
    return out;
}

std::vector<CVector> grid_to_series(const EmbeddingPlan& plan, const CMatrix& grid) {
    std::vector<CVector> out;
    for (const auto& s : plan.series) {
        CVector v = CVector::Constant(s.total, Complex(kNaN, kNaN));
        for (int t = 0; t < s.length; ++t) v[s.lead + t] = grid(s.x0 + t, s.y) * s.norm;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<CMatrix> grid_to_arrays(const EmbeddingPlan& plan, const CMatrix& grid) {
    std::vector<CMatrix> out;
    for (const auto& a : plan.arrays) out.push_back(grid.block(0, a.y0, a.nx, a.ny));
    return out;
}

double weighted_inner(const EmbeddingPlan& plan, const CMatrix& a, const CMatrix& b) {
    double s = 0;
    for (Eigen::Index c = 0; c < a.size(); ++c) {
        double w = plan.weights.data()[c];
        if (w <= 0) continue;
        Complex z = a.data()[c] * std::conj(b.data()[c]);
        if (std::isfinite(z.real())) s += w * z.real();
    }
    return s;
}

RMatrix wcor(const Decomposition& d, const std::vector<std::vector<int>>& groups) {
    const Eigen::Index n = Eigen::Index(groups.size());
    std::vector<CMatrix> comps;
    for (const auto& g : groups) comps.push_back(reconstruct_indices(d, g));
    RVector norms(n);
    for (Eigen::Index i = 0; i < n; ++i)
        norms[i] = std::sqrt(std::max(0.0, weighted_inner(d.plan(), comps[std::size_t(i)], comps[std::size_t(i)])));
    RMatrix r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            double ni = norms[i], nj = norms[j];
            double v = kNaN;
            if (ni > 0 && nj > 0)
                v = i == j ? 1.0
                           : std::clamp(weighted_inner(d.plan(), comps[std::size_t(i)], comps[std::size_t(j)]) /
                                            (ni * nj),
                                        -1.0, 1.0);
            r(i, j) = r(j, i) = v;
        }
    return r;
}

RMatrix wcor_range(Decomposition& d, int first, int last) {
    if (first < 1 || last < first)
        throw ValidationError("index_range", "invalid w-correlation range");
    if (last > d.size()) extend(d, last);
    std::vector<std::vector<int>> g;
    for (int i = first; i <= last; ++i) g.push_back({i - 1});
    return wcor(d, g);
}

std::vector<double> contributions(Decomposition& d, const GroupSpec& groups) {
    int need = max_index(groups);
    if (need > d.size()) extend(d, need);
    double total = trajectory_norm2(d.plan());
    std::vector<double> out;
    for (const auto& g : groups.groups) {
        CMatrix r = reconstruct_indices(d, zero_based(g.indices));
        double c = total > 0 ? weighted_inner(d.plan(), r, r) / total : 0.0;
        out.push_back(c);
    }
    return out;
}

}  // namespace shssa
