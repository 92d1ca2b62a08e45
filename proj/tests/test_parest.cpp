#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "oracle.hpp"
#include "shssa/errors.hpp"
#include "shssa/parest.hpp"

using namespace shssa;

namespace {

constexpr double kPi = std::numbers::pi;

RMatrix planar(int nx, int ny, const std::function<double(int, int)>& f) {
    RMatrix x(nx, ny);
    for (int m = 1; m <= nx; ++m)
        for (int n = 1; n <= ny; ++n) x(m - 1, n - 1) = f(m, n);
    return x;
}

bool has_pair(const std::vector<RootPair2D>& pairs, double px, double py, double tol) {
    for (const auto& p : pairs)
        if (std::abs(p.x.period - px) < tol && std::abs(p.y.period - py) < tol) return true;
    return false;
}

}  // namespace

TEST(MakeRoot, Conventions) {
    RootEstimate r = make_root(std::polar(1.0, 2 * kPi / 12));
    EXPECT_NEAR(r.period, 12, 1e-12);
    EXPECT_NEAR(r.rate, 0, 1e-15);
    EXPECT_NEAR(r.modulus, 1, 1e-15);
    RootEstimate n = make_root(-0.5);
    EXPECT_DOUBLE_EQ(n.argument, kPi);
    EXPECT_DOUBLE_EQ(n.period, 2);
    EXPECT_TRUE(std::isinf(make_root(0.9).period));
    RootEstimate f = make_root(std::polar(0.99345, 0.52));
    EXPECT_NEAR(f.rate, -0.006572, 5e-7);
    EXPECT_EQ(roots_to_report({r}),
              "   period     rate   |    Mod     Arg  |     Re        Im\n"
              "   12.000   0.000000 |  1.00000   0.52 |  0.86603   0.50000\n");
    EXPECT_EQ(roots_to_csv({n}).substr(0, 35), "period,rate,mod,arg,re,im\n2,-0.6931");
}

TEST(Esprit1d, SinePeriodTwelve) {
    RVector x(71);
    for (int k = 1; k <= 71; ++k) x[k - 1] = 5 * std::cos(2 * kPi * k / 12 + 1);
    auto d = decompose(plan_1d(x, 36), 2);
    for (auto m : {EspritMethod::ls, EspritMethod::tls}) {
        auto r = esprit_1d(d, {0, 1}, m);
        ASSERT_EQ(r.size(), 2u);
        EXPECT_NEAR(r[0].period, 12, 1e-6);
        EXPECT_NEAR(r[1].period, -12, 1e-6);
        for (const auto& e : r) EXPECT_NEAR(e.rate, 0, 1e-8);
        EXPECT_NEAR(std::abs(r[0].root - std::conj(r[1].root)), 0, 1e-8);
    }
}

TEST(Esprit1d, ExponentialAndDampedSine) {
    RVector x(50), y(80);
    for (int k = 1; k <= 50; ++k) x[k - 1] = 3 * std::pow(0.9, k);
    for (int k = 1; k <= 80; ++k) y[k - 1] = std::pow(0.99, k) * std::sin(2 * kPi * k / 12);
    auto r = esprit_1d(decompose(plan_1d(x, 20), 1), {0});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0].root.real(), 0.9, 1e-10);
    EXPECT_NEAR(r[0].rate, std::log(0.9), 1e-10);
    auto s = esprit_1d(decompose(plan_1d(y, 40), 2), {0, 1});
    for (const auto& e : s) {
        EXPECT_NEAR(e.rate, std::log(0.99), 1e-6);
        EXPECT_NEAR(std::abs(e.period), 12, 1e-6);
    }
}

TEST(Esprit1d, BasisRotationInvariance) {
    RVector x(60);
    for (int k = 1; k <= 60; ++k) x[k - 1] = std::cos(2 * kPi * k / 12) + 0.5 * std::cos(2 * kPi * k / 4 + 1);
    auto d = decompose(plan_1d(x, 24), 4);
    CMatrix U = d.U().leftCols(4);
    std::mt19937_64 g(80);
    CMatrix R = oracle::random_cmatrix(g, 4, 4, true).householderQr().householderQ();
    auto pairs = shift_pairs(d.plan().l_shape, 0);
    Eigen::ComplexEigenSolver<CMatrix> a(esprit_shift(U, pairs, EspritMethod::ls), false);
    Eigen::ComplexEigenSolver<CMatrix> b(esprit_shift(U * R, pairs, EspritMethod::ls), false);
    for (Eigen::Index i = 0; i < 4; ++i) {
        double best = 1e9;
        for (Eigen::Index j = 0; j < 4; ++j) best = std::min(best, std::abs(a.eigenvalues()[i] - b.eigenvalues()[j]));
        EXPECT_LT(best, 1e-8);
    }
    auto roots = esprit_1d(d, {0, 1, 2, 3});
    EXPECT_NEAR(roots[0].period, 12, 1e-6);
    EXPECT_NEAR(roots[1].period, -12, 1e-6);
    EXPECT_NEAR(roots[2].period, 4, 1e-6);
    EXPECT_NEAR(roots[3].period, -4, 1e-6);
}

TEST(Esprit1d, Errors) {
    RVector x = RVector::LinSpaced(30, 1, 30);
    auto d = decompose(plan_1d(x, 3), 3);
    EXPECT_THROW(esprit_1d(d, {0, 1, 2}), ValidationError);  // 3 vectors, 2 shifted rows
    EXPECT_THROW(esprit_1d(d, {}), ValidationError);
    auto d2 = decompose(plan_2d(planar(6, 6, [](int m, int n) { return m + n; }), 2, 2), 2);
    EXPECT_THROW(esprit_1d(d2, {0}), ValidationError);
    EXPECT_THROW(parse_esprit_method("svd"), ValidationError);
    EXPECT_THROW(parse_pairing_method("x"), ValidationError);
}

TEST(Esprit2d, TwoPlanarSines) {
    RMatrix x = planar(40, 40, [](int m, int n) {
        return std::cos(2 * kPi * (m / 10.0 + n / 5.0)) + std::cos(2 * kPi * (m / 10.0 - n / 5.0));
    });
    auto d = decompose(plan_2d(x, 20, 20), 4);
    for (auto pm : {PairingMethod::esprit2d, PairingMethod::memp}) {
        auto p = esprit_2d(d, {0, 1, 2, 3}, pm);
        ASSERT_EQ(p.size(), 4u);
        EXPECT_TRUE(has_pair(p, 10, 5, 1e-6));
        EXPECT_TRUE(has_pair(p, 10, -5, 1e-6));
        EXPECT_TRUE(has_pair(p, -10, 5, 1e-6));
        EXPECT_TRUE(has_pair(p, -10, -5, 1e-6));
        // Joint conjugation closure.
        for (const auto& a : p) {
            double best = 1e9;
            for (const auto& b : p)
                best = std::min(best, std::abs(a.x.root - std::conj(b.x.root)) + std::abs(a.y.root - std::conj(b.y.root)));
            EXPECT_LT(best, 1e-8);
        }
    }
}

TEST(Esprit2d, ProductOfCosinesAndExponential) {
    // 2 cos(2 pi m / 8) cos(2 pi n / 6) is the sum of two planar sines.
    RMatrix x = planar(30, 30, [](int m, int n) { return 2 * std::cos(2 * kPi * m / 8) * std::cos(2 * kPi * n / 6); });
    auto d = decompose(plan_2d(x, 12, 12), 4);
    auto p = esprit_2d(d, {0, 1, 2, 3});
    ASSERT_EQ(p.size(), 4u);
    for (double py : {6.0, -6.0}) {
        EXPECT_TRUE(has_pair(p, 8, py, 1e-6));
        EXPECT_TRUE(has_pair(p, -8, py, 1e-6));
    }
    RMatrix e = planar(10, 12, [](int m, int n) { return std::pow(0.9, m) * std::pow(1.1, n); });
    auto q = esprit_2d(decompose(plan_2d(e, 4, 5), 1), {0});
    ASSERT_EQ(q.size(), 1u);
    EXPECT_NEAR(std::abs(q[0].x.root - 0.9), 0, 1e-10);
    EXPECT_NEAR(std::abs(q[0].y.root - 1.1), 0, 1e-10);
}

TEST(Esprit2d, ShapedWindow) {
    RMatrix x = planar(25, 25, [](int m, int n) { return std::cos(2 * kPi * (m / 7.0 + n / 11.0)); });
    auto d = decompose(plan_shaped(x, circle_mask(5)), 2);
    auto p = esprit_2d(d, {0, 1});
    EXPECT_TRUE(has_pair(p, 7, 11, 1e-6));
    EXPECT_TRUE(has_pair(p, -7, -11, 1e-6));
}

TEST(Esprit2d, RepeatedXRootsNeedPairing) {
    // Both terms share the x-frequency, so Dx alone cannot separate them.
    RMatrix x = planar(30, 30, [](int m, int n) {
        return std::cos(2 * kPi * (m / 6.0 + n / 9.0)) + 0.7 * std::cos(2 * kPi * (m / 6.0 - n / 4.0));
    });
    auto d = decompose(plan_2d(x, 15, 15), 4);
    for (auto pm : {PairingMethod::esprit2d, PairingMethod::memp}) {
        auto p = esprit_2d(d, {0, 1, 2, 3}, pm);
        EXPECT_TRUE(has_pair(p, 6, 9, 1e-6)) << int(pm);
        EXPECT_TRUE(has_pair(p, 6, -4, 1e-6)) << int(pm);
        EXPECT_TRUE(has_pair(p, -6, -9, 1e-6)) << int(pm);
        EXPECT_TRUE(has_pair(p, -6, 4, 1e-6)) << int(pm);
    }
}

TEST(Esprit2d, ReportsMatchRoots) {
    RootEstimate a = make_root(std::polar(1.0, 2 * kPi / 10)), b = make_root(std::polar(1.0, -2 * kPi / 5));
    std::string csv = pairs_to_csv({{a, b}});
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x_period,x_rate,x_mod,x_arg,x_re,x_im,y_period,y_rate,y_mod,y_arg,y_re,y_im");
    std::string rep = pairs_to_report({{a, b}});
    EXPECT_NE(rep.find("   10.000"), std::string::npos);
    EXPECT_NE(rep.find("   -5.000"), std::string::npos);
}
