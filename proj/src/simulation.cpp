#include "shssa/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "shssa/errors.hpp"
#include "shssa/forecast.hpp"
#include "shssa/reconstruction.hpp"

namespace shssa {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<int> leading(int r) {
    std::vector<int> g(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) g[std::size_t(i)] = i;
    return g;
}

struct ForecastMethod {
    const char* name;
    ForecastKind kind;
    ForecastDir dir;
    int family;  // 0 mssa, 1 ssa, 2 cssa
};

constexpr ForecastMethod kForecasts[] = {
    {"recurrent mssa-column", ForecastKind::recurrent, ForecastDir::column, 0},
    {"recurrent mssa-row", ForecastKind::recurrent, ForecastDir::row, 0},
    {"recurrent ssa", ForecastKind::recurrent, ForecastDir::column, 1},
    {"recurrent cssa", ForecastKind::recurrent, ForecastDir::column, 2},
    {"vector mssa-column", ForecastKind::vector, ForecastDir::column, 0},
    {"vector mssa-row", ForecastKind::vector, ForecastDir::row, 0},
    {"vector ssa", ForecastKind::vector, ForecastDir::column, 1},
    {"vector cssa", ForecastKind::vector, ForecastDir::column, 2},
};
constexpr int kNumForecasts = int(std::size(kForecasts));
constexpr int kNumRecon = 3;

double mse(const CVector& a, const RVector& b) {
    return (a.real() - b).squaredNorm() / double(b.size());
}

// Errors of one replication: [recon (3) | forecasts (8)] per window.
std::vector<double> replicate(const SimConfig& cfg, const ExampleRanks& rk, const RVector& h1,
                              const RVector& h2, int rep) {
    std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(rep)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> noise(0.0, cfg.sigma);
    const int N = cfg.N, M = cfg.horizon;
    RVector f1(N), f2(N);
    for (int k = 0; k < N; ++k) f1[k] = h1[k] + noise(gen);
    for (int k = 0; k < N; ++k) f2[k] = h2[k] + noise(gen);
    RVector s1 = h1.head(N), s2 = h2.head(N), t1 = h1.segment(N, M), t2 = h2.segment(N, M);

    const int stride = kNumRecon + kNumForecasts;
    std::vector<double> out(cfg.windows.size() * std::size_t(stride));
    for (std::size_t w = 0; w < cfg.windows.size(); ++w) {
        int L = cfg.windows[w];
        double* row = out.data() + w * std::size_t(stride);

        auto mssa = decompose(plan_mssa({f1, f2}, L), rk.mssa);
        auto ssa1 = decompose(plan_1d(f1, L), rk.ssa);
        auto ssa2 = decompose(plan_1d(f2, L), rk.ssa);
        auto cssa = decompose(plan_cssa(f1, f2, L), rk.cssa);
        auto gm = leading(rk.mssa), gs = leading(rk.ssa), gc = leading(rk.cssa);

        {
            CMatrix g = reconstruct_indices(ssa1, gs);
            CMatrix g2 = reconstruct_indices(ssa2, gs);
            row[0] = 0.5 * (mse(g.col(0), s1) + mse(g2.col(0), s2));
        }
        {
            CMatrix g = reconstruct_indices(mssa, gm);
            row[1] = 0.5 * (mse(g.col(0), s1) + mse(g.col(1), s2));
        }
        {
            CMatrix g = reconstruct_indices(cssa, gc);
            CVector z = g.col(0);
            row[2] = 0.5 * ((z.real() - s1).squaredNorm() + (z.imag() - s2).squaredNorm()) / N;
        }
        for (int m = 0; m < kNumForecasts; ++m) {
            const auto& fm = kForecasts[m];
            double e = 0;
            if (fm.family == 0) {
                auto r = forecast(mssa, gm, M, fm.kind, fm.dir);
                e = 0.5 * (mse(r.forecast[0], t1) + mse(r.forecast[1], t2));
            } else if (fm.family == 1) {
                auto r1 = forecast(ssa1, gs, M, fm.kind, fm.dir);
                auto r2 = forecast(ssa2, gs, M, fm.kind, fm.dir);
                e = 0.5 * (mse(r1.forecast[0], t1) + mse(r2.forecast[0], t2));
            } else {
                auto r = forecast(cssa, gc, M, fm.kind, fm.dir);
                const CVector& z = r.forecast[0];
                e = 0.5 * ((z.real() - t1).squaredNorm() + (z.imag() - t2).squaredNorm()) / M;
            }
            row[kNumRecon + m] = e;
        }
    }
    return out;
}

}  // namespace

SimExample parse_example(const std::string& s) {
    if (s == "A" || s == "a") return SimExample::A;
    if (s == "B" || s == "b") return SimExample::B;
    if (s == "C" || s == "c") return SimExample::C;
    throw ValidationError("example", "unknown example '" + s + "' (expected A, B or C)");
}

const char* example_name(SimExample e) {
    switch (e) {
        case SimExample::A: return "A";
        case SimExample::B: return "B";
        case SimExample::C: return "C";
    }
    return "?";
}

void example_signal(SimExample e, int n, RVector& h1, RVector& h2) {
    h1.resize(n);
    h2.resize(n);
    for (int i = 0; i < n; ++i) {
        double k = i + 1;
        h1[i] = 30 * std::cos(kTwoPi * k / 12);
        switch (e) {
            case SimExample::A: h2[i] = 20 * std::cos(kTwoPi * k / 12 + std::numbers::pi / 4); break;
            case SimExample::B: h2[i] = 30 * std::cos(kTwoPi * k / 12 + std::numbers::pi / 2); break;
            case SimExample::C: h2[i] = 20 * std::cos(kTwoPi * k / 8 + std::numbers::pi / 4); break;
        }
    }
}

ExampleRanks example_ranks(SimExample e) {
    switch (e) {
        case SimExample::A: return {2, 2, 2};
        case SimExample::B: return {2, 2, 1};
        case SimExample::C: return {2, 4, 4};
    }
    return {2, 2, 2};
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SHSSA_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SimTable monte_carlo_mse(const SimConfig& cfg) {
    if (cfg.replications < 1) throw ValidationError("replications", "replications must be >= 1");
    if (cfg.windows.empty()) throw ValidationError("window_range", "no window lengths given");
    if (cfg.horizon < 1) throw ValidationError("horizon", "forecast horizon must be >= 1");
    ExampleRanks rk = example_ranks(cfg.example);
    RVector h1, h2;
    example_signal(cfg.example, cfg.N + cfg.horizon, h1, h2);

    const std::size_t stride = std::size_t(kNumRecon + kNumForecasts) * cfg.windows.size();
    std::vector<std::vector<double>> results(std::size_t(cfg.replications));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&] {
        for (int rep; (rep = next.fetch_add(1)) < cfg.replications;) {
            try {
                results[std::size_t(rep)] = replicate(cfg, rk, h1, h2, rep);
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mu);
                if (!failure) failure = std::current_exception();
                next = cfg.replications;
            }
        }
    };
    int nt = std::min(resolve_threads(cfg.threads), cfg.replications);
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    // Summed in replication order so the result is independent of scheduling.
    std::vector<double> mean(stride, 0.0);
    for (const auto& r : results)
        for (std::size_t i = 0; i < stride; ++i) mean[i] += r[i];
    for (auto& m : mean) m /= cfg.replications;

    SimTable t;
    t.windows = cfg.windows;
    const char* recon_names[kNumRecon] = {"ssa", "mssa", "cssa"};
    const std::size_t per = std::size_t(kNumRecon + kNumForecasts);
    auto column = [&](int idx) {
        std::vector<double> v;
        for (std::size_t w = 0; w < cfg.windows.size(); ++w) v.push_back(mean[w * per + std::size_t(idx)]);
        return v;
    };
    for (int i = 0; i < kNumRecon; ++i) t.reconstruction.push_back({recon_names[i], column(i)});
    for (int m = 0; m < kNumForecasts; ++m) t.forecast.push_back({kForecasts[m].name, column(kNumRecon + m)});
    return t;
}

std::string format_sim_csv(const SimTable& t) {
    std::string s = "table,method";
    for (int L : t.windows) s += ",L=" + std::to_string(L);
    s += "\n";
    auto rows = [&](const char* table, const std::vector<SimRow>& rs) {
        for (const auto& r : rs) {
            s += std::string(table) + "," + r.method;
            for (double v : r.mse) {
                char buf[32];
                std::snprintf(buf, sizeof buf, ",%.4f", v);
                s += buf;
            }
            s += "\n";
        }
    };
    rows("reconstruction", t.reconstruction);
    rows("forecast", t.forecast);
    return s;
}

}  // namespace shssa
