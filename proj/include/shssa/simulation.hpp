#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shssa/types.hpp"

namespace shssa {

/// Two-series test signals:
///   A: 30 cos(2 pi k / 12),  20 cos(2 pi k / 12 + pi / 4)
///   B: 30 cos(2 pi k / 12),  30 cos(2 pi k / 12 + pi / 2)
///   C: 30 cos(2 pi k / 12),  20 cos(2 pi k / 8 + pi / 4)
enum class SimExample { A, B, C };

SimExample parse_example(const std::string& s);
const char* example_name(SimExample e);

/// h^(1), h^(2) for k = 1..n.
void example_signal(SimExample e, int n, RVector& h1, RVector& h2);

/// Signal ranks used as the group size: {ssa, mssa, cssa}.
struct ExampleRanks {
    int ssa, mssa, cssa;
};
ExampleRanks example_ranks(SimExample e);

struct SimConfig {
    SimExample example = SimExample::A;
    int N = 71;
    double sigma = 5.0;
    int horizon = 24;
    std::vector<int> windows{12, 24, 36, 48, 60};
    int replications = 1000;
    std::uint64_t seed = 20240101;
    int threads = 0;  // 0: SHSSA_THREADS or hardware concurrency
};

struct SimRow {
    std::string method;
    std::vector<double> mse;  // one per window
};

struct SimTable {
    std::vector<int> windows;
    std::vector<SimRow> reconstruction;  // ssa, mssa, cssa
    std::vector<SimRow> forecast;        // {recurrent, vector} x {mssa-column, mssa-row, ssa, cssa}
};

/// Mean squared errors of reconstruction and forecasting, averaged over the
/// two series and over replications. Replication i draws its noise from a
/// generator seeded by (seed, i), so results do not depend on the thread count.
SimTable monte_carlo_mse(const SimConfig& cfg);

/// Worker count: explicit value, else SHSSA_THREADS, else hardware concurrency.
int resolve_threads(int requested);

/// Columns: table, method, then one column per window.
std::string format_sim_csv(const SimTable& t);

}  // namespace shssa
