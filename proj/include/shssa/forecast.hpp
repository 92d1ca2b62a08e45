#pragma once

#include <string>
#include <vector>

#include "shssa/decomposition.hpp"

namespace shssa {

enum class ForecastKind { recurrent, vector };
enum class ForecastDir { column, row };

const char* forecast_name(ForecastKind k, ForecastDir d);

/// x_next = sum_i coef_i z_i over the previous L-1 values, oldest first.
struct LrrColumn {
    CVector coef;
    double nu2 = 0;  // verticality coefficient
};

/// Next values of all series: R * Z, where Z stacks the last K_p - 1 values
/// of each series, oldest first.
struct LrrRow {
    CMatrix R;  // s x (K - s)
    CMatrix S;  // s x r, last entries of each per-series block of the basis
};

struct ForecastOptions {
    double nu_eps = 1e-10;     // column: require nu^2 < 1 - nu_eps
    double max_cond = 1e12;    // row: bound on cond(I - S S^H)
};

struct ForecastResult {
    ForecastKind kind = ForecastKind::recurrent;
    ForecastDir dir = ForecastDir::column;
    int M = 0;
    std::vector<std::string> names;
    std::vector<CVector> forecast;  // M values per series
    std::vector<CVector> extended;  // z_1 .. z_{N_p + M}, reconstruction plus forecast
};

/// Group indices are 0-based. Decompositions must come from 1d-ssa, mssa or cssa plans.
LrrColumn build_lrr_column(const Decomposition& d, const std::vector<int>& group,
                           const ForecastOptions& opt = {});
LrrRow build_lrr_row(const Decomposition& d, const std::vector<int>& group,
                     const ForecastOptions& opt = {});

ForecastResult recurrent_forecast_column(const Decomposition& d, const std::vector<int>& group, int M,
                                         const ForecastOptions& opt = {});
ForecastResult recurrent_forecast_row(const Decomposition& d, const std::vector<int>& group, int M,
                                      const ForecastOptions& opt = {});
ForecastResult vector_forecast_column(const Decomposition& d, const std::vector<int>& group, int M,
                                      const ForecastOptions& opt = {});
ForecastResult vector_forecast_row(const Decomposition& d, const std::vector<int>& group, int M,
                                   const ForecastOptions& opt = {});

ForecastResult forecast(const Decomposition& d, const std::vector<int>& group, int M, ForecastKind kind,
                        ForecastDir dir, const ForecastOptions& opt = {});

/// A^+ B by column-pivoted QR (rank tolerance 1e-12 relative).
CMatrix pinv_solve(const CMatrix& A, const CMatrix& B);

/// Shift matrix of a column basis: (first L-1 rows)^+ (last L-1 rows).
CMatrix shift_matrix(const CMatrix& P);
/// Same for orthonormal P without a factorization.
CMatrix shift_matrix_orthonormal(const CMatrix& P);

/// Row-basis shift matrix. `blocks` gives (offset, length) of each series part.
CMatrix shift_matrix_blocks(const CMatrix& Q, const std::vector<std::pair<int, int>>& blocks);
CMatrix shift_matrix_blocks_orthonormal(const CMatrix& Q, const std::vector<std::pair<int, int>>& blocks);

/// Diagonal averages of P W (L x r times r x K'), length L + K' - 1.
CVector hankelize_factored(const CMatrix& P, const CMatrix& W);

}  // namespace shssa
