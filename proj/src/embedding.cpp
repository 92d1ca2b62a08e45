#include "shssa/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shssa/errors.hpp"

namespace shssa {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Shared tail of every builder: data shape, origins, weights, coverage.
std::shared_ptr<EmbeddingPlan> build(Variant variant, Field field, CMatrix grid, Shape window,
                                     const BoolGrid& extra) {
    if (window.empty()) throw ValidationError("window_empty", "window shape is empty");
    int nx = int(grid.rows()), ny = int(grid.cols());
    if (extra.size() && (extra.rows() != nx || extra.cols() != ny))
        throw ValidationError("mask_size", "mask is " + std::to_string(extra.rows()) + "x" +
                                               std::to_string(extra.cols()) + ", data is " +
                                               std::to_string(nx) + "x" + std::to_string(ny));
    BoolGrid have(nx, ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            have(i, j) = finite(grid(i, j)) && (extra.size() == 0 || extra(i, j));
            if (!have(i, j)) grid(i, j) = 0.0;
        }
    auto plan = std::make_shared<EmbeddingPlan>();
    plan->variant = variant;
    plan->field = field;
    plan->nx = nx;
    plan->ny = ny;
    plan->n_shape = Shape::from_mask(have);
    if (plan->n_shape.empty()) throw ValidationError("data_empty", "no non-missing data cells");
    plan->l_shape = std::move(window);
    plan->lx = plan->l_shape.box_x();
    plan->ly = plan->l_shape.box_y();
    if (plan->lx > nx || plan->ly > ny)
        throw ValidationError("window_range", "window box " + std::to_string(plan->lx) + "x" +
                                                  std::to_string(plan->ly) + " exceeds data grid " +
                                                  std::to_string(nx) + "x" + std::to_string(ny));
    plan->k_shape = compute_k_shape(plan->l_shape, plan->n_shape);
    if (plan->k_shape.empty())
        throw ValidationError("empty_k_shape",
                              "window fits at no origin; first unplaceable origin is (1,1)");
    plan->weights = qh_weights(plan->l_shape, plan->k_shape, nx, ny);
    plan->n_eff = Shape::from_mask(plan->weights.array() > 0.5);
    plan->excluded = shape_difference(plan->n_shape, plan->n_eff);
    plan->ws = FourierWorkspace(std::move(grid));
    return plan;
}

void check_L(int L, int N, const char* what) {
    if (L < 2 || L > N - 1)
        throw ValidationError("window_range", std::string(what) + ": window length " +
                                                  std::to_string(L) + " outside [2, " +
                                                  std::to_string(N - 1) + "]");
}

// Leading/trailing NaN trimming.
std::pair<int, int> trim_range(const RVector& x) {
    int b = 0, e = int(x.size());
    while (b < e && std::isnan(x[b])) ++b;
    while (e > b && std::isnan(x[e - 1])) --e;
    return {b, e};
}

void fill_series_origins(EmbeddingPlan& plan) {
    int off = 0;
    for (auto& s : plan.series) {
        s.k = 0;
        for (const auto& k : plan.k_shape)
            if (k.y - 1 == s.y && k.x - 1 >= s.x0 && k.x - 1 < s.x0 + s.length) ++s.k;
        s.k_offset = off;
        off += s.k;
    }
}

CVector real_if(const EmbeddingPlan& plan, const CVector& in, CVector out) {
    if (plan.field == Field::real && in.imag().cwiseAbs().maxCoeff() == 0.0) out.imag().setZero();
    return out;
}

}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::ssa1d: return "1d-ssa";
        case Variant::mssa: return "mssa";
        case Variant::cssa: return "cssa";
        case Variant::twod: return "2d-ssa";
        case Variant::shaped: return "shaped";
        case Variant::mosaic: return "mosaic";
        case Variant::m2d: return "m2d";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    for (Variant v : {Variant::ssa1d, Variant::mssa, Variant::cssa, Variant::twod, Variant::shaped,
                      Variant::mosaic, Variant::m2d})
        if (s == variant_name(v)) return v;
    if (s == "1d" || s == "ssa") return Variant::ssa1d;
    if (s == "2d") return Variant::twod;
    throw ValidationError("variant", "unknown variant '" + s + "'");
}

PlanPtr plan_1d(const RVector& series, int L, std::string name) {
    int N = int(series.size());
    check_L(L, N, "1d-ssa");
    auto plan = build(Variant::ssa1d, Field::real, series.cast<Complex>(), Shape::rectangle(L, 1), {});
    SeriesInfo s;
    s.name = std::move(name);
    s.length = s.total = N;
    plan->series.push_back(s);
    fill_series_origins(*plan);
    return plan;
}

PlanPtr plan_mssa(const std::vector<RVector>& series, int L, MssaPacking packing,
                  std::vector<std::string> names, bool normalize) {
    if (series.empty()) throw ValidationError("series_empty", "mssa needs at least one series");
    if (!names.empty() && names.size() != series.size())
        throw ValidationError("series_names", "number of names differs from number of series");
    std::vector<SeriesInfo> info(series.size());
    std::vector<RVector> body(series.size());
    for (std::size_t p = 0; p < series.size(); ++p) {
        auto [b, e] = trim_range(series[p]);
        auto& s = info[p];
        s.name = names.empty() ? "F" + std::to_string(p + 1) : names[p];
        s.lead = b;
        s.total = int(series[p].size());
        s.length = e - b;
        body[p] = series[p].segment(b, e - b);
        if (s.length < L + 1 || L < 2)
            throw ValidationError("window_range", "mssa: series '" + s.name + "' has length " +
                                                      std::to_string(s.length) +
                                                      ", needs at least L+1 = " + std::to_string(L + 1) +
                                                      " with L >= 2");
        if (normalize) {
            double ss = 0;
            int n = 0;
            for (double v : body[p])
                if (!std::isnan(v)) ss += v * v, ++n;
            double rms = n ? std::sqrt(ss / n) : 0.0;
            s.norm = rms > 0 ? rms : 1.0;
            body[p] /= s.norm;
        }
    }
    CMatrix grid;
    if (packing == MssaPacking::twod) {
        int nx = 0;
        for (const auto& s : info) nx = std::max(nx, s.length);
        grid = CMatrix::Constant(nx, Eigen::Index(series.size()), Complex(kNaN, kNaN));
        for (std::size_t p = 0; p < series.size(); ++p) {
            info[p].x0 = 0;
            info[p].y = int(p);
            grid.col(Eigen::Index(p)).head(info[p].length) = body[p].cast<Complex>();
        }
    } else {
        int nx = -1;
        for (const auto& s : info) nx += s.length + 1;
        grid = CMatrix::Constant(nx, 1, Complex(kNaN, kNaN));
        int x = 0;
        for (std::size_t p = 0; p < series.size(); ++p) {
            info[p].x0 = x;
            info[p].y = 0;
            grid.col(0).segment(x, info[p].length) = body[p].cast<Complex>();
            x += info[p].length + 1;  // one missing separator cell
        }
    }
    auto plan = build(Variant::mssa, Field::real, std::move(grid), Shape::rectangle(L, 1), {});
    plan->series = std::move(info);
    fill_series_origins(*plan);
    return plan;
}

PlanPtr plan_cssa(const CVector& series, int L, std::string name) {
    int N = int(series.size());
    check_L(L, N, "cssa");
    auto plan = build(Variant::cssa, Field::complex, series, Shape::rectangle(L, 1), {});
    SeriesInfo s;
    s.name = std::move(name);
    s.length = s.total = N;
    plan->series.push_back(s);
    fill_series_origins(*plan);
    return plan;
}

PlanPtr plan_cssa(const RVector& re, const RVector& im, int L, std::string name) {
    if (re.size() != im.size())
        throw ValidationError("length_mismatch", "cssa: real and imaginary parts differ in length");
    CVector z(re.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) z[i] = Complex(re[i], im[i]);
    return plan_cssa(z, L, std::move(name));
}

PlanPtr plan_2d(const RMatrix& array, int Lx, int Ly) {
    int Nx = int(array.rows()), Ny = int(array.cols());
    if (Lx < 1 || Lx > Nx || Ly < 1 || Ly > Ny || Lx * Ly <= 1 || Lx * Ly >= Nx * Ny)
        throw ValidationError("window_range", "2d-ssa: window " + std::to_string(Lx) + "x" +
                                                  std::to_string(Ly) + " invalid for array " +
                                                  std::to_string(Nx) + "x" + std::to_string(Ny));
    if (!array.allFinite())
        throw ValidationError("missing_values", "2d-ssa: array has missing values, use shaped");
    auto plan = build(Variant::twod, Field::real, array.cast<Complex>(), Shape::rectangle(Lx, Ly), {});
    plan->arrays.push_back({"F1", 0, Nx, Ny});
    return plan;
}

PlanPtr plan_shaped(const CMatrix& array, const Shape& window, const BoolGrid& extra_mask) {
    bool real = true;
    for (Eigen::Index i = 0; i < array.size(); ++i)
        if (finite(array.data()[i]) && array.data()[i].imag() != 0.0) real = false;
    auto plan = build(Variant::shaped, real ? Field::real : Field::complex, array, window, extra_mask);
    plan->arrays.push_back({"F1", 0, int(array.rows()), int(array.cols())});
    return plan;
}

PlanPtr plan_shaped(const RMatrix& array, const Shape& window, const BoolGrid& extra_mask) {
    CMatrix z(array.rows(), array.cols());
    for (Eigen::Index i = 0; i < array.size(); ++i) {
        double v = array.data()[i];
        z.data()[i] = std::isnan(v) ? Complex(kNaN, kNaN) : Complex(v, 0.0);
    }
    auto plan = build(Variant::shaped, Field::real, std::move(z), window, extra_mask);
    plan->arrays.push_back({"F1", 0, int(array.rows()), int(array.cols())});
    return plan;
}

PlanPtr plan_mosaic(const std::vector<std::vector<RVector>>& blocks, const std::vector<int>& rows) {
    int s = int(blocks.size());
    if (s == 0 || blocks[0].empty())
        throw ValidationError("mosaic_shape", "mosaic needs at least one block");
    if (int(rows.size()) != s)
        throw ValidationError("mosaic_shape", "one window length per block row is required");
    int t = int(blocks[0].size());
    std::vector<int> K(t);
    for (int j = 0; j < t; ++j) K[j] = int(blocks[0][j].size()) - rows[0] + 1;
    int nx = 0;
    for (int i = 0; i < s; ++i) {
        if (int(blocks[i].size()) != t)
            throw ValidationError("mosaic_shape", "block rows have different numbers of blocks");
        if (rows[i] < 1) throw ValidationError("window_range", "mosaic window lengths must be >= 1");
        for (int j = 0; j < t; ++j) {
            if (K[j] < 1 || int(blocks[i][j].size()) != rows[i] + K[j] - 1)
                throw ValidationError("mosaic_shape", "block (" + std::to_string(i + 1) + "," +
                                                          std::to_string(j + 1) +
                                                          ") length does not match the mosaic");
            if (!blocks[i][j].allFinite())
                throw ValidationError("missing_values", "mosaic blocks must not contain missing values");
            nx = std::max(nx, int(blocks[i][j].size()));
        }
    }
    // Block column j occupies grid columns j(s+1) .. j(s+1)+s-1, then a separator.
    int ny = t * (s + 1) - 1;
    CMatrix grid = CMatrix::Constant(nx, ny, Complex(kNaN, kNaN));
    std::vector<SeriesInfo> info;
    int koff = 0;
    for (int j = 0; j < t; ++j) {
        for (int i = 0; i < s; ++i) {
            SeriesInfo si;
            si.name = "F" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
            si.length = si.total = int(blocks[i][j].size());
            si.y = j * (s + 1) + i;
            si.k = K[j];
            si.k_offset = koff;
            grid.col(si.y).head(si.length) = blocks[i][j].cast<Complex>();
            info.push_back(si);
        }
        koff += K[j];
    }
    std::vector<IndexPair> win;
    for (int i = 0; i < s; ++i)
        for (int a = 1; a <= rows[i]; ++a) win.push_back({a, i + 1});
    auto plan = build(Variant::mosaic, Field::real, std::move(grid), Shape(std::move(win)), {});
    plan->series = std::move(info);
    plan->mosaic_rows = s;
    plan->mosaic_cols = t;
    if (int(plan->K()) != koff)
        throw ComputeError("mosaic_shape", "mosaic origin set does not match the block layout");
    return plan;
}

PlanPtr plan_m2d(const std::vector<RMatrix>& arrays, int Lx, int Ly) {
    if (arrays.empty()) throw ValidationError("series_empty", "m2d needs at least one array");
    int Nx = int(arrays[0].rows()), Ny = int(arrays[0].cols());
    for (const auto& a : arrays) {
        if (a.rows() != Nx || a.cols() != Ny)
            throw ValidationError("array_dims", "m2d arrays must share dimensions");
        if (!a.allFinite()) throw ValidationError("missing_values", "m2d arrays must be complete");
    }
    if (Lx < 1 || Lx > Nx || Ly < 1 || Ly > Ny || Lx * Ly <= 1 || Lx * Ly >= Nx * Ny)
        throw ValidationError("window_range", "m2d: window " + std::to_string(Lx) + "x" +
                                                  std::to_string(Ly) + " invalid for arrays " +
                                                  std::to_string(Nx) + "x" + std::to_string(Ny));
    int s = int(arrays.size());
    CMatrix grid = CMatrix::Constant(Nx, s * (Ny + 1) - 1, Complex(kNaN, kNaN));
    std::vector<ArrayInfo> info;
    for (int p = 0; p < s; ++p) {
        int y0 = p * (Ny + 1);
        grid.middleCols(y0, Ny) = arrays[p].cast<Complex>();
        info.push_back({"F" + std::to_string(p + 1), y0, Nx, Ny});
    }
    auto plan = build(Variant::m2d, Field::real, std::move(grid), Shape::rectangle(Lx, Ly), {});
    plan->arrays = std::move(info);
    return plan;
}

PlanPtr plan_from_parts(Variant variant, Field field, const CMatrix& grid, const Shape& window,
                        std::vector<SeriesInfo> series, std::vector<ArrayInfo> arrays, int mosaic_rows,
                        int mosaic_cols) {
    auto plan = build(variant, field, grid, window, {});
    plan->series = std::move(series);
    plan->arrays = std::move(arrays);
    plan->mosaic_rows = mosaic_rows;
    plan->mosaic_cols = mosaic_cols;
    if (plan->is_series()) fill_series_origins(*plan);
    return plan;
}

CVector traj_matvec(const EmbeddingPlan& plan, const CVector& v) {
    return real_if(plan, v, qh_matvec(plan.ws, plan.l_shape, plan.k_shape, v, Direction::forward));
}

CVector traj_adjoint_matvec(const EmbeddingPlan& plan, const CVector& u) {
    return real_if(plan, u, qh_matvec(plan.ws, plan.l_shape, plan.k_shape, u, Direction::adjoint));
}

CMatrix materialize(const EmbeddingPlan& plan, std::size_t max_entries) {
    if (plan.L() * plan.K() > max_entries)
        throw ValidationError("materialize_guard", "trajectory matrix has " +
                                                       std::to_string(plan.L() * plan.K()) +
                                                       " entries, limit " + std::to_string(max_entries));
    CMatrix T(Eigen::Index(plan.L()), Eigen::Index(plan.K()));
    const CMatrix& g = plan.grid();
    for (std::size_t j = 0; j < plan.K(); ++j)
        for (std::size_t i = 0; i < plan.L(); ++i) {
            IndexPair c = shifted_sum(plan.l_shape[i], plan.k_shape[j]);
            T(Eigen::Index(i), Eigen::Index(j)) = g(c.x - 1, c.y - 1);
        }
    return T;
}

std::vector<CVector> split_by_series(const EmbeddingPlan& plan, const CVector& v) {
    if (std::size_t(v.size()) != plan.K())
        throw ValidationError("size_mismatch", "vector length differs from K");
    std::vector<CVector> out;
    for (const auto& s : plan.series) out.push_back(v.segment(s.k_offset, s.k));
    return out;
}

CMatrix origin_array(const EmbeddingPlan& plan, const CVector& v) {
    if (std::size_t(v.size()) != plan.K())
        throw ValidationError("size_mismatch", "vector length differs from K");
    CMatrix a = CMatrix::Constant(plan.k_shape.box_x(), plan.k_shape.box_y(), Complex(kNaN, kNaN));
    for (std::size_t i = 0; i < plan.K(); ++i)
        a(plan.k_shape[i].x - 1, plan.k_shape[i].y - 1) = v[Eigen::Index(i)];
    return a;
}

CMatrix window_array(const EmbeddingPlan& plan, const CVector& u) {
    if (std::size_t(u.size()) != plan.L())
        throw ValidationError("size_mismatch", "vector length differs from L");
    CMatrix a = CMatrix::Constant(plan.lx, plan.ly, Complex(kNaN, kNaN));
    for (std::size_t i = 0; i < plan.L(); ++i)
        a(plan.l_shape[i].x - 1, plan.l_shape[i].y - 1) = u[Eigen::Index(i)];
    return a;
}

}  // namespace shssa
