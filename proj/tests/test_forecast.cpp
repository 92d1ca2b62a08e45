#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "oracle.hpp"
#include "shssa/errors.hpp"
#include "shssa/forecast.hpp"

using namespace shssa;

namespace {

constexpr double kPi = std::numbers::pi;

using Signal = std::function<Complex(int)>;  // value at time k = 1, 2, ...

CVector sample(const Signal& f, int from, int n) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = f(from + i);
    return v;
}

double rel_max(const CVector& got, const CVector& want) {
    return (got - want).cwiseAbs().maxCoeff() / std::max(1e-300, want.cwiseAbs().maxCoeff());
}

const ForecastKind kKinds[] = {ForecastKind::recurrent, ForecastKind::vector};
const ForecastDir kDirs[] = {ForecastDir::column, ForecastDir::row};

std::vector<int> first(int r) {
    std::vector<int> g;
    for (int i = 0; i < r; ++i) g.push_back(i);
    return g;
}

// Every variant continues every series analytically over M steps.
void expect_exact(const Decomposition& d, const std::vector<Signal>& truth, int r, int M, double tol) {
    for (auto k : kKinds)
        for (auto dir : kDirs) {
            ForecastResult f = forecast(d, first(r), M, k, dir);
            ASSERT_EQ(f.forecast.size(), truth.size());
            for (std::size_t p = 0; p < truth.size(); ++p) {
                int n = d.plan().series[p].length;
                EXPECT_EQ(f.forecast[p].size(), M);
                EXPECT_LT(rel_max(f.forecast[p], sample(truth[p], n + 1, M)), tol) << forecast_name(k, dir) << p;
                EXPECT_LT(rel_max(f.extended[p], sample(truth[p], 1, n + M)), tol) << forecast_name(k, dir) << p;
            }
        }
}

RVector real_sample(const Signal& f, int n) { return sample(f, 1, n).real(); }

}  // namespace

TEST(Forecast, ExponentialTwoToTheN) {
    Signal f = [](int k) { return Complex(std::pow(2.0, k), 0); };
    for (int L : {2, 5, 9}) {
        auto d = decompose(plan_1d(real_sample(f, 20), L), 1);
        expect_exact(d, {f}, 1, 2 * L, 1e-8);
    }
}

TEST(Forecast, SinusoidPeriodTwelve) {
    Signal f = [](int k) { return Complex(10 * std::cos(2 * kPi * k / 12 + 0.4), 0); };
    auto d = decompose(plan_1d(real_sample(f, 71), 24), 2);
    expect_exact(d, {f}, 2, 48, 1e-6);
    auto c = build_lrr_column(d, {0, 1});
    EXPECT_EQ(c.coef.size(), 23);
    EXPECT_LT(c.nu2, 1);
}

TEST(Forecast, MatchedTwoSeriesSine) {
    Signal a = [](int k) { return Complex(30 * std::cos(2 * kPi * k / 12), 0); };
    Signal b = [](int k) { return Complex(20 * std::cos(2 * kPi * k / 12 + kPi / 4), 0); };
    auto d = decompose(plan_mssa({real_sample(a, 71), real_sample(b, 71)}, 36), 2);
    expect_exact(d, {a, b}, 2, 72, 1e-6);
    auto rc = recurrent_forecast_column(d, {0, 1}, 24), rr = recurrent_forecast_row(d, {0, 1}, 24);
    for (int p = 0; p < 2; ++p) EXPECT_LT(rel_max(rc.forecast[p], rr.forecast[p]), 1e-6);
    // The common LRR equals the one from SSA of either series alone.
    auto s = decompose(plan_1d(real_sample(a, 71), 36), 2);
    auto fs = recurrent_forecast_column(s, {0, 1}, 24);
    EXPECT_LT(rel_max(rc.forecast[0], fs.forecast[0]), 1e-6);
}

TEST(Forecast, UnequalLengthsAndNormalization) {
    Signal a = [](int k) { return Complex(3 * std::cos(2 * kPi * k / 10) + std::pow(1.01, k), 0); };
    Signal b = [](int k) { return Complex(-std::sin(2 * kPi * k / 10) + 2 * std::pow(1.01, k), 0); };
    auto p = plan_mssa({real_sample(a, 60), real_sample(b, 45)}, 20, MssaPacking::twod, {}, true);
    auto d = decompose(p, 3);
    expect_exact(d, {a, b}, 3, 40, 1e-6);
}

TEST(Forecast, ComplexSeries) {
    Signal f = [](int k) {
        return 4.0 * std::exp(Complex(0, 2 * kPi * k / 12)) + std::exp(Complex(-0.01 * k, -2 * kPi * k / 7));
    };
    auto d = decompose(plan_cssa(sample(f, 1, 50), 20), 2);
    expect_exact(d, {f}, 2, 40, 1e-6);
}

TEST(Forecast, RowBoundaryRankEqualsKMinusS) {
    // K = 3, s = 1, r = 2: the row relation uses exactly K - s = 2 values.
    Signal f = [](int k) { return Complex(std::cos(2 * kPi * k / 12), 0); };
    auto d = decompose(plan_1d(real_sample(f, 20), 18), 2);
    auto lrr = build_lrr_row(d, {0, 1});
    EXPECT_EQ(lrr.R.rows(), 1);
    EXPECT_EQ(lrr.R.cols(), 2);
    for (auto k : kKinds) {
        auto r = forecast(d, {0, 1}, 12, k, ForecastDir::row);
        EXPECT_LT(rel_max(r.forecast[0], sample(f, 21, 12)), 1e-6);
    }
    auto d3 = decompose(plan_1d(real_sample(f, 20), 18), 3);
    EXPECT_THROW(build_lrr_row(d3, {0, 1, 2}), ValidationError);
}

TEST(Forecast, FastVectorMatchesDirect) {
    std::mt19937_64 g(70);
    std::normal_distribution<double> noise(0, 5);
    for (int L : {12, 24, 48}) {
        for (int t = 0; t < 3; ++t) {
            RVector a(71), b(71);
            for (int k = 1; k <= 71; ++k) {
                a[k - 1] = 30 * std::cos(2 * kPi * k / 12) + noise(g);
                b[k - 1] = 20 * std::cos(2 * kPi * k / 12 + kPi / 4) + noise(g);
            }
            std::vector<PlanPtr> plans{plan_1d(a, L), plan_mssa({a, RVector(b.head(64))}, L),
                                       plan_cssa(a, b, L)};
            for (const auto& p : plans) {
                auto d = decompose(p, 3);
                for (const std::vector<int>& grp : {std::vector<int>{0, 1}, std::vector<int>{0, 2}}) {
                    auto fc = vector_forecast_column(d, grp, 24);
                    auto oc = oracle::vector_forecast_column(d, grp, 24);
                    auto fr = vector_forecast_row(d, grp, 24);
                    auto orow = oracle::vector_forecast_row(d, grp, 24);
                    for (std::size_t s = 0; s < fc.extended.size(); ++s) {
                        EXPECT_LT(rel_max(fc.extended[s], oc[s]), 1e-9) << variant_name(p->variant) << L;
                        EXPECT_LT(rel_max(fr.extended[s], orow[s]), 1e-9) << variant_name(p->variant) << L;
                    }
                }
            }
        }
    }
}

TEST(Forecast, ShortcutShiftMatrices) {
    std::mt19937_64 g(71);
    for (int t = 0; t < 20; ++t) {
        bool cplx = t % 2;
        CMatrix A = oracle::random_cmatrix(g, 30, 4, cplx);
        CMatrix P = A.householderQr().householderQ() * CMatrix::Identity(30, 4);
        EXPECT_LT(oracle::rel_err(shift_matrix_orthonormal(P), shift_matrix(P)), 1e-10);
        EXPECT_LT(oracle::rel_err(shift_matrix(P), oracle::shift_svd(P.topRows(29), P.bottomRows(29))), 1e-10);
        std::vector<std::pair<int, int>> blocks{{0, 12}, {12, 10}, {22, 8}};
        EXPECT_LT(oracle::rel_err(shift_matrix_blocks_orthonormal(P, blocks), shift_matrix_blocks(P, blocks)), 1e-10);
    }
}

TEST(Forecast, ShiftMatrixSpectrumIsRoots) {
    Signal f = [](int k) { return Complex(std::pow(0.98, k) * std::cos(2 * kPi * k / 9) + std::pow(1.03, k), 0); };
    auto d = decompose(plan_1d(real_sample(f, 60), 25), 3);
    CMatrix P = d.U().leftCols(3);
    Eigen::ComplexEigenSolver<CMatrix> es(shift_matrix(P), false);
    std::vector<Complex> want{std::polar(0.98, 2 * kPi / 9), std::polar(0.98, -2 * kPi / 9), 1.03};
    for (Complex w : want) {
        double best = 1e9;
        for (Eigen::Index i = 0; i < 3; ++i) best = std::min(best, std::abs(es.eigenvalues()[i] - w));
        EXPECT_LT(best, 1e-8);
    }
}

TEST(Forecast, NestedHorizons) {
    std::mt19937_64 g(72);
    RVector x = oracle::random_cvector(g, 50, false).real();
    auto d = decompose(plan_mssa({x, RVector(x.reverse())}, 15), 4);
    for (auto dir : kDirs) {
        auto a = vector_forecast_column(d, {0, 1, 2}, 10);
        auto b = vector_forecast_column(d, {0, 1, 2}, 9);
        if (dir == ForecastDir::row) {
            a = vector_forecast_row(d, {0, 1, 2}, 10);
            b = vector_forecast_row(d, {0, 1, 2}, 9);
        }
        for (int p = 0; p < 2; ++p) EXPECT_LT((a.forecast[p].head(9) - b.forecast[p]).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Forecast, Errors) {
    std::mt19937_64 g(73);
    RVector x = oracle::random_cvector(g, 40, false).real();
    auto d = decompose(plan_1d(x, 10), 3);
    EXPECT_THROW(forecast(d, {}, 5, ForecastKind::recurrent, ForecastDir::column), ValidationError);
    EXPECT_THROW(forecast(d, {5}, 5, ForecastKind::recurrent, ForecastDir::column), ValidationError);
    EXPECT_THROW(forecast(d, {0}, 0, ForecastKind::recurrent, ForecastDir::column), ValidationError);
    ForecastOptions strict;
    strict.nu_eps = 1.0;
    EXPECT_THROW(build_lrr_column(d, {0}, strict), ComputeError);
    strict.max_cond = 0.5;
    EXPECT_THROW(build_lrr_row(d, {0}, strict), ComputeError);
    auto two = decompose(plan_2d(RMatrix(oracle::random_cmatrix(g, 6, 6, false).real()), 2, 2), 2);
    EXPECT_THROW(forecast(two, {0}, 3, ForecastKind::vector, ForecastDir::column), ValidationError);
    RVector gap = x;
    gap[20] = std::numeric_limits<double>::quiet_NaN();
    auto dg = decompose(plan_mssa({x, gap}, 5), 2);
    EXPECT_THROW(forecast(dg, {0}, 3, ForecastKind::recurrent, ForecastDir::column), ValidationError);
}
