#include "shssa/parest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "shssa/errors.hpp"
#include "shssa/forecast.hpp"

namespace shssa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxCond = 1e12;

CMatrix basis(const Decomposition& d, const std::vector<int>& group) {
    if (group.empty()) throw ValidationError("group_empty", "estimation group is empty");
    CMatrix U(d.U().rows(), Eigen::Index(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) {
        int j = group[i];
        if (j < 0 || j >= d.size())
            throw ValidationError("index_range", "eigentriple " + std::to_string(j + 1) + " is not computed");
        U.col(Eigen::Index(i)) = d.U().col(j);
    }
    return U;
}

CMatrix pick_rows(const CMatrix& U, const std::vector<std::pair<int, int>>& pairs, bool second) {
    CMatrix out(Eigen::Index(pairs.size()), U.cols());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out.row(Eigen::Index(i)) = U.row(second ? pairs[i].second : pairs[i].first);
    return out;
}

double cond(const CMatrix& T) {
    Eigen::JacobiSVD<CMatrix> svd(T);
    const auto& s = svd.singularValues();
    double lo = s[s.size() - 1];
    return lo > 0 ? s[0] / lo : kInf;
}

CMatrix checked_inverse(const CMatrix& T) {
    double c = cond(T);
    if (!(c <= kMaxCond))
        throw ComputeError("pairing_ambiguous", "eigenvector matrix is ill-conditioned (condition number " +
                                                    std::to_string(c) + "); roots cannot be paired");
    return T.inverse();
}

// Eigenvectors of a square matrix; eigenvalues are discarded.
CMatrix eigenvectors(const CMatrix& A) {
    Eigen::ComplexEigenSolver<CMatrix> es(A);
    if (es.info() != Eigen::Success) throw ComputeError("eigen_failed", "shift matrix eigensolver failed");
    return es.eigenvectors();
}

bool root_less(const RootEstimate& a, const RootEstimate& b) {
    double pa = std::abs(a.period), pb = std::abs(b.period);
    if (pa != pb) return pa > pb;
    if ((a.period > 0) != (b.period > 0)) return a.period > 0;
    return a.modulus > b.modulus;
}

std::string num(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// Values that print as zero at `digits` decimals, without a minus sign.
double tidy(double v, int digits) { return std::abs(v) < 0.5 * std::pow(10.0, -digits) ? 0.0 : v; }

std::string report_row(const RootEstimate& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%9.3f %10.6f |%9.5f%7.2f |%9.5f%10.5f", r.period, tidy(r.rate, 6), r.modulus,
                  tidy(r.argument, 2), tidy(r.root.real(), 5), tidy(r.root.imag(), 5));
    return buf;
}

}  // namespace

EspritMethod parse_esprit_method(const std::string& s) {
    if (s == "ls") return EspritMethod::ls;
    if (s == "tls") return EspritMethod::tls;
    throw ValidationError("esprit_method", "unknown ESPRIT method '" + s + "' (expected ls or tls)");
}

PairingMethod parse_pairing_method(const std::string& s) {
    if (s == "esprit2d" || s == "2d-esprit") return PairingMethod::esprit2d;
    if (s == "memp" || s == "2d-memp") return PairingMethod::memp;
    throw ValidationError("pairing_method", "unknown pairing method '" + s + "' (expected esprit2d or memp)");
}

RootEstimate make_root(Complex mu) {
    RootEstimate r;
    r.root = mu;
    r.modulus = std::abs(mu);
    double a = std::arg(mu);
    if (a <= -std::numbers::pi) a = std::numbers::pi;
    r.argument = a;
    r.rate = std::log(r.modulus);
    r.period = a == 0 ? kInf : 2 * std::numbers::pi / a;
    return r;
}

void sort_roots(std::vector<RootEstimate>& roots) { std::stable_sort(roots.begin(), roots.end(), root_less); }

std::vector<std::pair<int, int>> shift_pairs(const Shape& window, int axis) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < window.size(); ++i) {
        IndexPair p = window[i];
        IndexPair q = axis == 0 ? IndexPair{p.x + 1, p.y} : IndexPair{p.x, p.y + 1};
        if (window.contains(q)) out.push_back({int(i), int(window.index_of(q))});
    }
    return out;
}

CMatrix esprit_shift(const CMatrix& U, const std::vector<std::pair<int, int>>& pairs, EspritMethod m) {
    Eigen::Index r = U.cols();
    if (Eigen::Index(pairs.size()) < r)
        throw ValidationError("shift_rank", "group of " + std::to_string(r) + " vectors exceeds the " +
                                                std::to_string(pairs.size()) + " shifted window rows");
    CMatrix A = pick_rows(U, pairs, false), B = pick_rows(U, pairs, true);
    if (m == EspritMethod::ls) return pinv_solve(A, B);
    CMatrix AB(A.rows(), 2 * r);
    AB << A, B;
    Eigen::JacobiSVD<CMatrix> svd(AB, Eigen::ComputeFullV);
    CMatrix V = svd.matrixV();
    CMatrix V12 = V.block(0, r, r, r), V22 = V.block(r, r, r, r);
    if (!(cond(V22) <= kMaxCond)) throw ComputeError("degenerate_basis", "TLS-ESPRIT system is singular");
    return -V12 * V22.inverse();
}

std::vector<RootEstimate> esprit_1d(const Decomposition& d, const std::vector<int>& group, EspritMethod m) {
    const Shape& w = d.plan().l_shape;
    if (w.box_y() != 1)
        throw ValidationError("esprit_variant", "1D ESPRIT needs a single-column window; use the 2D estimator");
    CMatrix D = esprit_shift(basis(d, group), shift_pairs(w, 0), m);
    Eigen::ComplexEigenSolver<CMatrix> es(D, false);
    if (es.info() != Eigen::Success) throw ComputeError("eigen_failed", "shift matrix eigensolver failed");
    std::vector<RootEstimate> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(make_root(es.eigenvalues()[i]));
    sort_roots(out);
    return out;
}

std::vector<RootPair2D> esprit_2d(const Decomposition& d, const std::vector<int>& group, PairingMethod m,
                                  EspritMethod shift, std::uint64_t seed) {
    const Shape& w = d.plan().l_shape;
    CMatrix U = basis(d, group);
    CMatrix Dx = esprit_shift(U, shift_pairs(w, 0), shift);
    CMatrix Dy = esprit_shift(U, shift_pairs(w, 1), shift);
    Eigen::Index r = U.cols();
    CVector lx(r), ly(r);

    if (m == PairingMethod::esprit2d) {
        std::mt19937_64 gen(seed);
        double gamma = std::uniform_real_distribution<double>(0.5, 1.5)(gen);
        CMatrix T = eigenvectors(Dx + gamma * Dy);
        CMatrix Ti = checked_inverse(T);
        lx = (Ti * Dx * T).diagonal();
        ly = (Ti * Dy * T).diagonal();
    } else {
        CMatrix T = eigenvectors(Dx);
        CMatrix Ti = checked_inverse(T);
        CVector ex = (Ti * Dx * T).diagonal();
        CMatrix Ey = Ti * Dy * T;
        std::vector<bool> done(std::size_t(r), false);
        double scale = std::max(1.0, ex.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < r; ++i) {
            if (done[std::size_t(i)]) continue;
            std::vector<Eigen::Index> cl;
            for (Eigen::Index j = i; j < r; ++j)
                if (!done[std::size_t(j)] && std::abs(ex[j] - ex[i]) <= 1e-6 * scale) {
                    cl.push_back(j);
                    done[std::size_t(j)] = true;
                }
            Eigen::Index c = Eigen::Index(cl.size());
            CMatrix B(c, c);
            for (Eigen::Index a = 0; a < c; ++a)
                for (Eigen::Index b = 0; b < c; ++b) B(a, b) = Ey(cl[std::size_t(a)], cl[std::size_t(b)]);
            Eigen::ComplexEigenSolver<CMatrix> es(B, false);
            for (Eigen::Index a = 0; a < c; ++a) {
                lx[cl[std::size_t(a)]] = ex[cl[std::size_t(a)]];
                ly[cl[std::size_t(a)]] = es.eigenvalues()[a];
            }
        }
    }

    std::vector<RootPair2D> out;
    for (Eigen::Index i = 0; i < r; ++i) out.push_back({make_root(lx[i]), make_root(ly[i])});
    std::stable_sort(out.begin(), out.end(), [](const RootPair2D& a, const RootPair2D& b) {
        if (root_less(a.x, b.x)) return true;
        if (root_less(b.x, a.x)) return false;
        return root_less(a.y, b.y);
    });
    return out;
}

std::string roots_to_report(const std::vector<RootEstimate>& roots) {
    std::string s = "   period     rate   |    Mod     Arg  |     Re        Im\n";
    for (const auto& r : roots) s += report_row(r) + "\n";
    return s;
}

std::string roots_to_csv(const std::vector<RootEstimate>& roots) {
    std::string s = "period,rate,mod,arg,re,im\n";
    for (const auto& r : roots)
        s += num(r.period) + "," + num(r.rate) + "," + num(r.modulus) + "," + num(r.argument) + "," +
             num(r.root.real()) + "," + num(r.root.imag()) + "\n";
    return s;
}

std::string pairs_to_report(const std::vector<RootPair2D>& pairs) {
    std::string s = "x: period     rate   |    Mod     Arg  |     Re        Im    || "
                    "y: period     rate   |    Mod     Arg  |     Re        Im\n";
    for (const auto& p : pairs) s += report_row(p.x) + " || " + report_row(p.y) + "\n";
    return s;
}

std::string pairs_to_csv(const std::vector<RootPair2D>& pairs) {
    std::string s = "x_period,x_rate,x_mod,x_arg,x_re,x_im,y_period,y_rate,y_mod,y_arg,y_re,y_im\n";
    for (const auto& p : pairs) {
        for (const RootEstimate* r : {&p.x, &p.y}) {
            s += num(r->period) + "," + num(r->rate) + "," + num(r->modulus) + "," + num(r->argument) + "," +
                 num(r->root.real()) + "," + num(r->root.imag());
            s += r == &p.x ? "," : "\n";
        }
    }
    return s;
}

}  // namespace shssa
