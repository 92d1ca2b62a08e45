#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shssa/hankel.hpp"
#include "shssa/shape.hpp"
#include "shssa/types.hpp"

namespace shssa {

enum class Variant { ssa1d, mssa, cssa, twod, shaped, mosaic, m2d };
enum class MssaPacking { twod, oned };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);

/// Where one input series lives on the packed grid.
struct SeriesInfo {
    std::string name;
    int length = 0;       // N_p, after trimming leading/trailing missing values
    int lead = 0;         // leading missing values trimmed from the input
    int total = 0;        // untrimmed input length
    int x0 = 0;           // 0-based grid row of the first value
    int y = 0;            // 0-based grid column
    int k = 0;            // number of origins (columns of the trajectory matrix)
    int k_offset = 0;     // position of the first such column
    double norm = 1.0;    // divisor applied before embedding
};

/// Column range of one array on an M-2D grid.
struct ArrayInfo {
    std::string name;
    int y0 = 0;  // 0-based first grid column
    int nx = 0;
    int ny = 0;
};

/// Trajectory operator of one SSA variant, realized as a shaped embedding.
///
/// Every variant is a quasi-Hankel matrix with entries x_{l_i +- k_j} over a
/// window shape L and origin shape K placed on a packed grid. Plans are
/// immutable and shared through shared_ptr.
struct EmbeddingPlan {
    Variant variant = Variant::ssa1d;
    Field field = Field::real;
    int nx = 0, ny = 0;
    Shape n_shape;     // cells holding data
    Shape l_shape;     // window
    Shape k_shape;     // origins
    Shape n_eff;       // cells reached by the trajectory matrix
    Shape excluded;    // n_shape minus n_eff
    FourierWorkspace ws;
    RMatrix weights;   // entries per grid cell
    std::vector<SeriesInfo> series;  // ssa1d, mssa, cssa, mosaic blocks
    std::vector<ArrayInfo> arrays;   // twod, shaped, m2d
    int lx = 0, ly = 0;  // window box
    int mosaic_rows = 0, mosaic_cols = 0;

    std::size_t L() const { return l_shape.size(); }
    std::size_t K() const { return k_shape.size(); }
    bool is_series() const {
        return variant == Variant::ssa1d || variant == Variant::mssa || variant == Variant::cssa;
    }
    /// Packed data grid (zero outside n_shape, normalized if requested).
    const CMatrix& grid() const { return ws.grid(); }
};

using PlanPtr = std::shared_ptr<const EmbeddingPlan>;

PlanPtr plan_1d(const RVector& series, int L, std::string name = "F1");

/// Series may carry leading/trailing NaN padding, which is trimmed.
/// With normalize, each series is divided by its root mean square.
PlanPtr plan_mssa(const std::vector<RVector>& series, int L, MssaPacking packing = MssaPacking::twod,
                  std::vector<std::string> names = {}, bool normalize = false);

PlanPtr plan_cssa(const RVector& re, const RVector& im, int L, std::string name = "F1");
PlanPtr plan_cssa(const CVector& series, int L, std::string name = "F1");

PlanPtr plan_2d(const RMatrix& array, int Lx, int Ly);

/// NaN cells of the array are missing. Optional masks restrict the data
/// (extra_mask) and define the window (window_mask); an empty extra_mask
/// means no restriction.
PlanPtr plan_shaped(const RMatrix& array, const Shape& window, const BoolGrid& extra_mask = {});
PlanPtr plan_shaped(const CMatrix& array, const Shape& window, const BoolGrid& extra_mask = {});

/// blocks[i][j] is series X^(i,j); block (i,j) has a window of rows[i]
/// cells, so its length must be rows[i] + K_j - 1 with K_j shared across
/// the block column.
PlanPtr plan_mosaic(const std::vector<std::vector<RVector>>& blocks, const std::vector<int>& rows);

PlanPtr plan_m2d(const std::vector<RMatrix>& arrays, int Lx, int Ly);

/// Rebuilds a plan from its packed grid (NaN marks missing cells), window and
/// bookkeeping, as stored by the persistence layer.
PlanPtr plan_from_parts(Variant variant, Field field, const CMatrix& grid, const Shape& window,
                        std::vector<SeriesInfo> series, std::vector<ArrayInfo> arrays, int mosaic_rows = 0,
                        int mosaic_cols = 0);

CVector traj_matvec(const EmbeddingPlan& plan, const CVector& v);
CVector traj_adjoint_matvec(const EmbeddingPlan& plan, const CVector& u);
/// Dense L x K trajectory matrix. Refuses when L*K exceeds max_entries.
CMatrix materialize(const EmbeddingPlan& plan, std::size_t max_entries = 1000000);

/// Splits an origin-indexed vector into per-series parts (series variants).
std::vector<CVector> split_by_series(const EmbeddingPlan& plan, const CVector& v);
/// Origin-indexed vector laid out on K's bounding box, NaN elsewhere.
CMatrix origin_array(const EmbeddingPlan& plan, const CVector& v);
/// Window-indexed vector laid out on L's bounding box, NaN elsewhere.
CMatrix window_array(const EmbeddingPlan& plan, const CVector& u);

}  // namespace shssa
