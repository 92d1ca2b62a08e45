#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "shssa/decomposition.hpp"
#include "shssa/errors.hpp"
#include "shssa/forecast.hpp"
#include "shssa/io.hpp"
#include "shssa/parest.hpp"
#include "shssa/plot.hpp"
#include "shssa/reconstruction.hpp"
#include "shssa/simulation.hpp"
#include "shssa/store.hpp"

namespace shssa::cli {
namespace {

namespace fs = std::filesystem;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---- options -----------------------------------------------------------------

struct DataOptions {
    std::vector<std::string> inputs;
    std::string variant = "1d-ssa";
    std::vector<std::string> columns;
    std::string missing = "NA";
    bool normalize = false;
    int L = 0, Lx = 0, Ly = 0;
    std::string window_mask, mask;
    int circle = 0, triangle = 0;
    std::string packing = "2d";
    std::vector<int> row_windows;
};

struct DecomposeCmd {
    DataOptions data;
    int neig = 10;
    std::string method = "auto";
    std::uint64_t seed = 0x5eed5eedULL;
    double rank_eps = 1e-9;
    std::string out;
};

struct ReconstructCmd {
    std::string store, groups, out;
    bool original = false, residual = false;
};

struct WcorCmd {
    std::string store, groups, range = "1-10", out, svg;
};

struct ForecastCmd {
    std::string store, groups, kind = "recurrent", direction = "column", out;
    int horizon = 12;
    bool extended = false;
};

struct ParestCmd {
    std::string store, groups, method = "ls", pairing = "esprit2d", csv;
    std::uint64_t seed = 1;
};

struct PlotCmd {
    std::string store, type = "all", indices = "1-10", out_dir;
};

struct SimulateCmd {
    std::string example = "A", out;
    int N = 71, horizon = 24, replications = 1000, threads = 0;
    double sigma = 5;
    std::vector<int> windows{12, 24, 36, 48, 60};
    std::uint64_t seed = 20240101;
};

// ---- helpers -------------------------------------------------------------------

std::string num(double v) {
    if (std::isnan(v)) return "NA";
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        io::write_file_atomic(path, text);
}

std::vector<int> zero_based(const std::vector<int>& idx) {
    std::vector<int> out;
    for (int i : idx) out.push_back(i - 1);
    return out;
}

// Union of all groups, in first-appearance order.
std::vector<int> union_indices(const GroupSpec& g) {
    std::vector<int> out;
    std::set<int> seen;
    for (const auto& grp : g.groups)
        for (int i : grp.indices)
            if (seen.insert(i).second) out.push_back(i);
    return out;
}

std::string join_indices(const std::vector<int>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s;
}

io::SeriesTable select_columns(const io::SeriesTable& t, const std::vector<std::string>& cols) {
    if (cols.empty()) return t;
    io::SeriesTable out;
    for (const auto& c : cols) {
        auto it = std::find(t.names.begin(), t.names.end(), c);
        if (it == t.names.end()) throw ValidationError("csv_column", "no column named '" + c + "'");
        out.names.push_back(c);
        out.columns.push_back(t.columns[std::size_t(it - t.names.begin())]);
    }
    return out;
}

RVector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const RVector>(v.data(), Eigen::Index(v.size()));
}

const std::string& single_input(const DataOptions& o) {
    if (o.inputs.size() != 1)
        throw ValidationError("input", "variant " + o.variant + " takes exactly one --input");
    return o.inputs[0];
}

Shape window_shape(const DataOptions& o) {
    int given = (o.window_mask.empty() ? 0 : 1) + (o.circle > 0) + (o.triangle > 0) + (o.Lx > 0 || o.Ly > 0);
    if (given != 1)
        throw ValidationError("window_spec",
                              "shaped windows need exactly one of --Lx/--Ly, --window-mask, --circle, --triangle");
    if (!o.window_mask.empty()) return Shape::from_mask(io::read_mask(o.window_mask));
    if (o.circle > 0) return circle_mask(o.circle);
    if (o.triangle > 0) return triangle_mask(o.triangle);
    if (o.Lx < 1 || o.Ly < 1) throw ValidationError("window_spec", "--Lx and --Ly must both be >= 1");
    return Shape::rectangle(o.Lx, o.Ly);
}

PlanPtr build_plan(const DataOptions& o) {
    Variant v = parse_variant(o.variant);
    switch (v) {
        case Variant::ssa1d:
        case Variant::mssa:
        case Variant::cssa: {
            auto t = select_columns(io::read_csv_series(single_input(o), o.missing), o.columns);
            if (t.columns.empty()) throw ValidationError("csv_empty", "input has no columns");
            std::vector<RVector> series;
            for (const auto& c : t.columns) series.push_back(to_vector(c));
            int minlen = std::numeric_limits<int>::max();
            for (const auto& s : series) {
                int n = 0;
                for (double x : s) n += std::isfinite(x);
                minlen = std::min(minlen, n);
            }
            int L = o.L > 0 ? o.L : minlen / 2;
            if (v == Variant::ssa1d) {
                if (series.size() != 1)
                    throw ValidationError("input", "1d-ssa takes one column; select it with --columns");
                if (!series[0].allFinite())
                    throw ValidationError("missing_values", "1d-ssa input must be complete; use mssa to trim "
                                                            "leading or trailing missing values");
                return plan_1d(series[0], L, t.names[0]);
            }
            if (v == Variant::cssa) {
                if (series.size() != 2)
                    throw ValidationError("input", "cssa takes two columns (real, imaginary)");
                if (series[0].size() != series[1].size())
                    throw ValidationError("length_mismatch", "real and imaginary parts differ in length");
                return plan_cssa(series[0], series[1], L, t.names[0] + "+i" + t.names[1]);
            }
            MssaPacking pk = o.packing == "1d" ? MssaPacking::oned : MssaPacking::twod;
            if (o.packing != "1d" && o.packing != "2d")
                throw ValidationError("packing", "--packing must be 1d or 2d");
            return plan_mssa(series, L, pk, t.names, o.normalize);
        }
        case Variant::twod: {
            RMatrix g = io::read_grid(single_input(o), o.missing);
            if (o.Lx < 1 || o.Ly < 1) throw ValidationError("window_spec", "2d-ssa needs --Lx and --Ly");
            return plan_2d(g, o.Lx, o.Ly);
        }
        case Variant::shaped: {
            RMatrix g = io::read_grid(single_input(o), o.missing);
            BoolGrid extra;
            if (!o.mask.empty()) extra = io::read_mask(o.mask);
            return plan_shaped(g, window_shape(o), extra);
        }
        case Variant::mosaic: {
            auto t = select_columns(io::read_csv_series(single_input(o), o.missing), o.columns);
            std::size_t s = o.row_windows.size();
            if (s == 0 || t.columns.size() % s != 0)
                throw ValidationError("mosaic_shape", "--row-windows must list one length per block row "
                                                      "and divide the column count");
            std::size_t cols = t.columns.size() / s;
            std::vector<std::vector<RVector>> blocks(s);
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    RVector c = to_vector(t.columns[i * cols + j]);
                    Eigen::Index n = 0;
                    while (n < c.size() && std::isfinite(c[n])) ++n;
                    blocks[i].push_back(c.head(n));
                }
            return plan_mosaic(blocks, o.row_windows);
        }
        case Variant::m2d: {
            if (o.inputs.empty()) throw ValidationError("input", "m2d needs one --input per array");
            std::vector<RMatrix> arrays;
            for (const auto& p : o.inputs) arrays.push_back(io::read_grid(p, o.missing));
            return plan_m2d(arrays, o.Lx, o.Ly);
        }
    }
    throw ValidationError("variant", "unsupported variant");
}

void add_data_options(CLI::App* c, DataOptions& o) {
    c->add_option("-i,--input", o.inputs, "CSV series file or grid (CSV matrix / PGM); repeat for m2d")
        ->required();
    c->add_option("--variant", o.variant, "1d-ssa, mssa, cssa, 2d-ssa, shaped, mosaic, m2d")
        ->capture_default_str();
    c->add_option("--columns", o.columns, "CSV columns to use, in order")->delimiter(',');
    c->add_option("--missing", o.missing, "missing-value token")->capture_default_str();
    c->add_flag("--normalize", o.normalize, "mssa: divide each series by its root mean square");
    c->add_option("-L,--window", o.L, "window length for series variants (default: half the shortest series)");
    c->add_option("--Lx", o.Lx, "window rows (2d-ssa, shaped, m2d)");
    c->add_option("--Ly", o.Ly, "window columns (2d-ssa, shaped, m2d)");
    c->add_option("--window-mask", o.window_mask, "shaped: window mask file");
    c->add_option("--circle", o.circle, "shaped: circular window of radius R");
    c->add_option("--triangle", o.triangle, "shaped: triangular window with the given side");
    c->add_option("--mask", o.mask, "shaped: extra data mask (cells outside are ignored)");
    c->add_option("--packing", o.packing, "mssa packing: 2d or 1d")->capture_default_str();
    c->add_option("--row-windows", o.row_windows, "mosaic: window length of each block row")->delimiter(',');
}

std::string describe(const Decomposition& d) {
    const auto& p = d.plan();
    std::ostringstream s;
    s << "Variant: " << variant_name(p.variant) << " (" << (p.field == Field::real ? "real" : "complex") << ")\n";
    if (p.is_series() || p.variant == Variant::mosaic) {
        s << "Series length:";
        for (std::size_t i = 0; i < p.series.size(); ++i) s << (i ? ", " : " ") << p.series[i].length;
        s << "\n";
        if (p.variant == Variant::mosaic) {
            s << "Blocks: " << p.mosaic_rows << " x " << p.mosaic_cols << "\n";
            s << "Window cells: " << p.L() << "\n";
        } else {
            s << "Window length: " << p.L() << "\n";
        }
    } else {
        s << "Grid: " << p.nx << " x " << p.ny << " (" << p.n_shape.size() << " data cells)\n";
        s << "Window: " << p.lx << " x " << p.ly << " box, " << p.L() << " cells\n";
    }
    s << "Origins (K): " << p.K() << "\n";
    s << "Covered cells: " << p.n_eff.size() << ", excluded cells: " << p.excluded.size() << "\n";
    s << "Method: " << method_name(d.method()) << "\n";
    s << "Eigentriples: " << d.size() << " (numeric rank " << numeric_rank(d) << ")\n";
    s << "  index            sigma           lambda    share\n";
    for (const auto& r : eigenvalue_table(d)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%7d %16.8g %16.8g %8.4f%%\n", r.index, r.sigma, r.lambda, 100 * r.share);
        s << buf;
    }
    return s.str();
}

// One CSV column per series (per group); complex values split in re/im.
void append_series_columns(io::SeriesTable& t, const EmbeddingPlan& p, const std::string& prefix,
                           const std::vector<CVector>& series) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::string base = prefix + p.series[i].name;
        std::vector<double> re(std::size_t(series[i].size())), im(re.size());
        for (Eigen::Index k = 0; k < series[i].size(); ++k) {
            re[std::size_t(k)] = series[i][k].real();
            im[std::size_t(k)] = series[i][k].imag();
        }
        if (p.field == Field::complex) {
            t.names.push_back(base + ".re");
            t.columns.push_back(re);
            t.names.push_back(base + ".im");
            t.columns.push_back(im);
        } else {
            t.names.push_back(base);
            t.columns.push_back(re);
        }
    }
}

RMatrix real_nan(const CMatrix& m) {
    RMatrix r = m.real();
    for (Eigen::Index i = 0; i < r.size(); ++i)
        if (!std::isfinite(r.data()[i])) r.data()[i] = kNaN;
    return r;
}

void write_grid_outputs(const std::string& dir, const std::string& name, const CMatrix& g) {
    RMatrix r = real_nan(g);
    io::write_file_atomic((fs::path(dir) / (name + ".csv")).string(), io::format_csv_matrix(r));
    io::write_file_atomic((fs::path(dir) / (name + ".pgm")).string(), io::format_pgm(r));
    if (g.imag().cwiseAbs().maxCoeff() > 0)  // NaN compares false, so only finite imaginary parts count
        io::write_file_atomic((fs::path(dir) / (name + ".im.csv")).string(), io::format_csv_matrix(g.imag()));
}

Decomposition open_store(const std::string& dir) {
    if (dir.empty()) throw ValidationError("store_missing", "--store is required");
    return load_decomposition(dir);
}

// ---- commands ------------------------------------------------------------------

void run_decompose(const DecomposeCmd& c) {
    PlanPtr plan = build_plan(c.data);
    DecomposeOptions o;
    o.method = parse_method(c.method);
    o.seed = c.seed;
    o.rank_eps = c.rank_eps;
    int lim = int(std::min(plan->L(), plan->K()));
    Decomposition d = decompose(plan, std::min(c.neig, lim), o);
    if (!c.out.empty()) {
        std::map<std::string, std::string> meta;
        for (std::size_t i = 0; i < c.data.inputs.size(); ++i) meta["input" + std::to_string(i + 1)] = c.data.inputs[i];
        save_decomposition(d, c.out, meta);
    }
    std::cout << describe(d);
    if (!c.out.empty()) std::cout << "Saved to " << c.out << "\n";
}

void run_reconstruct(const ReconstructCmd& c) {
    Decomposition d = open_store(c.store);
    GroupSpec g = parse_groups(c.groups);
    g.add_original = c.original;
    g.add_residual = c.residual;
    auto set = reconstruct(d, g);
    auto contrib = contributions(d, g);
    const auto& p = d.plan();
    if (p.is_series() || p.variant == Variant::mosaic) {
        io::SeriesTable t;
        for (const auto& item : set.items) append_series_columns(t, p, item.name + ".", grid_to_series(p, item.grid));
        write_out(c.out, io::format_csv_series(t));
    } else {
        if (c.out.empty()) throw ValidationError("output", "grid reconstructions need --out DIR");
        for (const auto& item : set.items) {
            if (p.arrays.size() <= 1) {
                CMatrix g0 = p.arrays.empty() ? item.grid : grid_to_arrays(p, item.grid)[0];
                write_grid_outputs(c.out, item.name, g0);
            } else {
                auto parts = grid_to_arrays(p, item.grid);
                for (std::size_t a = 0; a < parts.size(); ++a)
                    write_grid_outputs(c.out, item.name + "_" + p.arrays[a].name, parts[a]);
            }
        }
    }
    std::cerr << "Contributions:\n";
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-16s %8.4f%%\n", g.groups[i].name.c_str(), 100 * contrib[i]);
        std::cerr << buf;
    }
}

void run_wcor(const WcorCmd& c) {
    Decomposition d = open_store(c.store);
    RMatrix w;
    std::vector<std::string> labels;
    int first = 1;
    if (!c.groups.empty()) {
        GroupSpec g = parse_groups(c.groups);
        int need = max_index(g);
        if (need > d.size()) extend(d, need);
        std::vector<std::vector<int>> idx;
        for (const auto& grp : g.groups) {
            idx.push_back(zero_based(grp.indices));
            labels.push_back(grp.name);
        }
        w = wcor(d, idx);
    } else {
        auto dash = c.range.find('-');
        int a = 1, b = 1;
        try {
            a = std::stoi(c.range.substr(0, dash));
            b = dash == std::string::npos ? a : std::stoi(c.range.substr(dash + 1));
        } catch (const std::exception&) {
            throw ValidationError("range_syntax", "--range must look like 1-20");
        }
        w = wcor_range(d, a, b);
        first = a;
        for (int i = a; i <= b; ++i) labels.push_back("F" + std::to_string(i));
    }
    std::string s;
    for (const auto& l : labels) s += "," + l;
    s += "\n";
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        s += labels[std::size_t(i)];
        for (Eigen::Index j = 0; j < w.cols(); ++j) s += "," + num(w(i, j));
        s += "\n";
    }
    write_out(c.out, s);
    if (!c.svg.empty()) io::write_file_atomic(c.svg, plot_wcor(w, first));
}

void run_forecast(const ForecastCmd& c) {
    Decomposition d = open_store(c.store);
    GroupSpec g = parse_groups(c.groups);
    int need = max_index(g);
    if (need > d.size()) extend(d, need);
    auto idx = union_indices(g);
    ForecastKind kind;
    if (c.kind == "recurrent")
        kind = ForecastKind::recurrent;
    else if (c.kind == "vector")
        kind = ForecastKind::vector;
    else
        throw ValidationError("forecast_kind", "--kind must be recurrent or vector");
    ForecastDir dir;
    if (c.direction == "column")
        dir = ForecastDir::column;
    else if (c.direction == "row")
        dir = ForecastDir::row;
    else
        throw ValidationError("forecast_direction", "--direction must be column or row");
    ForecastResult r = forecast(d, zero_based(idx), c.horizon, kind, dir);

    const auto& p = d.plan();
    std::string s = "# method: " + std::string(forecast_name(kind, dir)) + "\n# group: " + join_indices(idx) +
                    "\n# horizon: " + std::to_string(c.horizon) + "\n";
    io::SeriesTable t;
    std::vector<CVector> cols = c.extended ? r.extended : r.forecast;
    if (c.extended)
        for (std::size_t i = 0; i < cols.size(); ++i) {
            // Restore the leading padding of the input.
            const auto& si = p.series[i];
            CVector v = CVector::Constant(si.lead + cols[i].size(), Complex(kNaN, kNaN));
            v.tail(cols[i].size()) = cols[i];
            cols[i] = v;
        }
    append_series_columns(t, p, "", cols);
    s += io::format_csv_series(t);
    write_out(c.out, s);
}

void run_parest(const ParestCmd& c) {
    Decomposition d = open_store(c.store);
    GroupSpec g = parse_groups(c.groups);
    int need = max_index(g);
    if (need > d.size()) extend(d, need);
    auto idx = zero_based(union_indices(g));
    EspritMethod m = parse_esprit_method(c.method);
    if (d.plan().l_shape.box_y() == 1) {
        auto roots = esprit_1d(d, idx, m);
        std::cout << roots_to_report(roots);
        if (!c.csv.empty()) io::write_file_atomic(c.csv, roots_to_csv(roots));
    } else {
        auto pairs = esprit_2d(d, idx, parse_pairing_method(c.pairing), m, c.seed);
        std::cout << pairs_to_report(pairs);
        if (!c.csv.empty()) io::write_file_atomic(c.csv, pairs_to_csv(pairs));
    }
}

void run_plot(const PlotCmd& c) {
    Decomposition d = open_store(c.store);
    if (c.out_dir.empty()) throw ValidationError("output", "--out-dir is required");
    GroupSpec g = parse_groups(c.indices);
    int need = max_index(g);
    if (need > d.size()) extend(d, need);
    auto idx = zero_based(union_indices(g));
    std::set<std::string> types;
    if (c.type == "all")
        types = {"vectors", "paired", "wcor", "arrays"};
    else
        types = {c.type};
    const auto& p = d.plan();
    bool two_d = p.l_shape.box_y() > 1;
    auto path = [&](const char* name) { return (fs::path(c.out_dir) / name).string(); };
    for (const auto& t : types) {
        if (t == "vectors") {
            if (!two_d || c.type == "vectors") io::write_file_atomic(path("vectors.svg"), plot_vectors(d, idx));
        } else if (t == "factors") {
            io::write_file_atomic(path("factors.svg"), plot_vectors(d, idx, true));
        } else if (t == "paired") {
            std::vector<std::pair<int, int>> pairs;
            for (std::size_t i = 0; i + 1 < idx.size(); ++i) pairs.push_back({idx[i], idx[i + 1]});
            io::write_file_atomic(path("paired.svg"), plot_paired(d, pairs));
        } else if (t == "wcor") {
            std::vector<std::vector<int>> gs;
            for (int j : idx) gs.push_back({j});
            io::write_file_atomic(path("wcor.svg"), plot_wcor(wcor(d, gs), idx.empty() ? 1 : idx[0] + 1));
        } else if (t == "arrays") {
            if (two_d || c.type == "arrays") io::write_file_atomic(path("arrays.svg"), plot_arrays(d, idx));
        } else if (t == "factor-arrays") {
            io::write_file_atomic(path("factor-arrays.svg"), plot_arrays(d, idx, true));
        } else {
            throw ValidationError("plot_type", "unknown plot type '" + t +
                                                   "' (vectors, factors, paired, wcor, arrays, factor-arrays, all)");
        }
    }
}

void run_simulate(const SimulateCmd& c) {
    SimConfig cfg;
    cfg.example = parse_example(c.example);
    cfg.N = c.N;
    cfg.sigma = c.sigma;
    cfg.horizon = c.horizon;
    cfg.windows = c.windows;
    cfg.replications = c.replications;
    cfg.seed = c.seed;
    cfg.threads = c.threads;
    SimTable t = monte_carlo_mse(cfg);
    std::string csv = format_sim_csv(t);
    if (!c.out.empty()) io::write_file_atomic(c.out, csv);
    std::cout << csv;
}

}  // namespace

void register_commands(CLI::App& app) {
    auto dec = std::make_shared<DecomposeCmd>();
    auto* c = app.add_subcommand("decompose", "embed the data and compute leading eigentriples");
    add_data_options(c, dec->data);
    c->add_option("-n,--neig", dec->neig, "number of eigentriples")->capture_default_str();
    c->add_option("--method", dec->method, "auto, gram or truncated")->capture_default_str();
    c->add_option("--seed", dec->seed, "start vector seed for the truncated method");
    c->add_option("--rank-eps", dec->rank_eps, "numeric rank threshold relative to sigma_1")->capture_default_str();
    c->add_option("-o,--out", dec->out, "decomposition directory to write");
    c->callback([dec] { run_decompose(*dec); });

    auto rec = std::make_shared<ReconstructCmd>();
    c = app.add_subcommand("reconstruct", "grouped reconstruction from a stored decomposition");
    c->add_option("-s,--store", rec->store, "decomposition directory")->required();
    c->add_option("-g,--groups", rec->groups, "groups, e.g. \"Trend=1;Seasonality=2-11\"")->required();
    c->add_flag("--original", rec->original, "also output the original data");
    c->add_flag("--residual", rec->residual, "also output the residual");
    c->add_option("-o,--out", rec->out, "CSV file (series) or directory (grids); stdout if omitted");
    c->callback([rec] { run_reconstruct(*rec); });

    auto wc = std::make_shared<WcorCmd>();
    c = app.add_subcommand("wcor", "w-correlation matrix");
    c->add_option("-s,--store", wc->store, "decomposition directory")->required();
    c->add_option("--range", wc->range, "elementary components first-last")->capture_default_str();
    c->add_option("-g,--groups", wc->groups, "groups instead of elementary components");
    c->add_option("-o,--out", wc->out, "CSV file; stdout if omitted");
    c->add_option("--svg", wc->svg, "heatmap SVG file");
    c->callback([wc] { run_wcor(*wc); });

    auto fc = std::make_shared<ForecastCmd>();
    c = app.add_subcommand("forecast", "recurrent or vector forecast of series variants");
    c->add_option("-s,--store", fc->store, "decomposition directory")->required();
    c->add_option("-g,--groups", fc->groups, "eigentriples of the signal; groups are merged")->required();
    c->add_option("-M,--horizon", fc->horizon, "steps ahead")->capture_default_str();
    c->add_option("--kind", fc->kind, "recurrent or vector")->capture_default_str();
    c->add_option("--direction", fc->direction, "column or row")->capture_default_str();
    c->add_flag("--extended", fc->extended, "output reconstruction followed by the forecast");
    c->add_option("-o,--out", fc->out, "CSV file; stdout if omitted");
    c->callback([fc] { run_forecast(*fc); });

    auto pe = std::make_shared<ParestCmd>();
    c = app.add_subcommand("parestimate", "ESPRIT estimates of characteristic roots");
    c->add_option("-s,--store", pe->store, "decomposition directory")->required();
    c->add_option("-g,--groups", pe->groups, "eigentriples to use; groups are merged")->required();
    c->add_option("--method", pe->method, "shift matrix solver: ls or tls")->capture_default_str();
    c->add_option("--pairing", pe->pairing, "2D pairing: esprit2d or memp")->capture_default_str();
    c->add_option("--seed", pe->seed, "seed for the esprit2d mixing coefficient");
    c->add_option("--csv", pe->csv, "also write the table as CSV");
    c->callback([pe] { run_parest(*pe); });

    auto pl = std::make_shared<PlotCmd>();
    c = app.add_subcommand("plot", "SVG diagnostics");
    c->add_option("-s,--store", pl->store, "decomposition directory")->required();
    c->add_option("--type", pl->type, "vectors, factors, paired, wcor, arrays, factor-arrays or all")
        ->capture_default_str();
    c->add_option("--indices", pl->indices, "eigentriples to plot")->capture_default_str();
    c->add_option("-o,--out-dir", pl->out_dir, "output directory")->required();
    c->callback([pl] { run_plot(*pl); });

    auto sm = std::make_shared<SimulateCmd>();
    c = app.add_subcommand("simulate", "Monte Carlo reconstruction and forecast errors");
    c->add_option("--example", sm->example, "A, B or C")->capture_default_str();
    c->add_option("-N", sm->N, "series length")->capture_default_str();
    c->add_option("--sigma", sm->sigma, "noise standard deviation")->capture_default_str();
    c->add_option("-M,--horizon", sm->horizon, "forecast horizon")->capture_default_str();
    c->add_option("--windows", sm->windows, "window lengths")->delimiter(',');
    c->add_option("-R,--replications", sm->replications, "replications")->capture_default_str();
    c->add_option("--seed", sm->seed, "base seed")->capture_default_str();
    c->add_option("--threads", sm->threads, "worker threads (default: SHSSA_THREADS or all cores)");
    c->add_option("-o,--out", sm->out, "CSV file");
    c->callback([sm] { run_simulate(*sm); });
}

}  // namespace shssa::cli
