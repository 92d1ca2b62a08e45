#include "shssa/store.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "shssa/errors.hpp"
#include "shssa/io.hpp"

namespace shssa {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kFormat = "shssa-decomposition";
constexpr int kVersion = 1;

std::string encode(const CMatrix& m) {
    std::string out(std::size_t(m.size()) * 16, '\0');
    char* p = out.data();
    for (Eigen::Index i = 0; i < m.size(); ++i)
        for (double v : {m.data()[i].real(), m.data()[i].imag()}) {
            std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
            for (int b = 0; b < 8; ++b) *p++ = char((bits >> (8 * b)) & 0xff);
        }
    return out;
}

CMatrix decode(const std::string& bytes, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
    if (bytes.size() != std::size_t(rows * cols) * 16)
        throw ValidationError("store_corrupt", what + " has " + std::to_string(bytes.size()) +
                                                   " bytes, expected " + std::to_string(rows * cols * 16));
    CMatrix m(rows, cols);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        double v[2];
        for (double& x : v) {
            std::uint64_t bits = 0;
            for (int b = 0; b < 8; ++b) bits |= std::uint64_t(*p++) << (8 * b);
            x = std::bit_cast<double>(bits);
        }
        m.data()[i] = Complex(v[0], v[1]);
    }
    return m;
}

json block(const std::string& file, Eigen::Index rows, Eigen::Index cols) {
    return {{"file", file}, {"rows", rows}, {"cols", cols}};
}

CMatrix read_block(const fs::path& dir, const json& b) {
    std::string file = b.at("file");
    return decode(io::read_file((dir / file).string()), b.at("rows"), b.at("cols"), file);
}

}  // namespace

void save_decomposition(const Decomposition& d, const std::string& dir,
                        const std::map<std::string, std::string>& meta) {
    const auto& p = d.plan();
    fs::path root(dir);
    fs::create_directories(root);

    CMatrix grid = p.grid();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    BoolGrid have = p.n_shape.to_mask(p.nx, p.ny);
    for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i)
            if (!have(i, j)) grid(i, j) = Complex(nan, nan);

    json m;
    m["format"] = kFormat;
    m["version"] = kVersion;
    m["byte_order"] = "little";
    m["layout"] = "column-major complex128 (re, im)";
    m["variant"] = variant_name(p.variant);
    m["field"] = p.field == Field::real ? "real" : "complex";
    m["grid"] = block("grid.f64", p.nx, p.ny);
    json win = json::array();
    for (const auto& c : p.l_shape) win.push_back({c.x, c.y});
    m["window"] = win;
    json series = json::array();
    for (const auto& s : p.series)
        series.push_back({{"name", s.name}, {"length", s.length}, {"lead", s.lead}, {"total", s.total},
                          {"x0", s.x0}, {"y", s.y}, {"k", s.k}, {"k_offset", s.k_offset}, {"norm", s.norm}});
    m["series"] = series;
    json arrays = json::array();
    for (const auto& a : p.arrays)
        arrays.push_back({{"name", a.name}, {"y0", a.y0}, {"nx", a.nx}, {"ny", a.ny}});
    m["arrays"] = arrays;
    m["mosaic"] = {{"rows", p.mosaic_rows}, {"cols", p.mosaic_cols}};
    m["method"] = method_name(d.method());
    const auto& o = d.options();
    m["options"] = {{"rank_eps", o.rank_eps}, {"tol", o.tol}, {"max_restarts", o.max_restarts}, {"seed", o.seed}};
    m["neig"] = d.size();
    m["sigma"] = std::vector<double>(d.sigma().data(), d.sigma().data() + d.size());
    m["U"] = block("U.f64", d.U().rows(), d.U().cols());
    m["V"] = block("V.f64", d.V().rows(), d.V().cols());
    if (d.gram_basis()) m["basis"] = block("basis.f64", d.gram_basis()->rows(), d.gram_basis()->cols());
    m["meta"] = meta;

    io::write_file_atomic((root / "grid.f64").string(), encode(grid));
    io::write_file_atomic((root / "U.f64").string(), encode(d.U()));
    io::write_file_atomic((root / "V.f64").string(), encode(d.V()));
    if (d.gram_basis()) io::write_file_atomic((root / "basis.f64").string(), encode(*d.gram_basis()));
    // Manifest last: a directory with a manifest is complete.
    io::write_file_atomic((root / "manifest.json").string(), m.dump(2) + "\n");
}

Decomposition load_decomposition(const std::string& dir, std::map<std::string, std::string>* meta) {
    fs::path root(dir);
    if (!fs::exists(root / "manifest.json"))
        throw ValidationError("store_missing", "no decomposition found in '" + dir + "'");
    json m;
    try {
        m = json::parse(io::read_file((root / "manifest.json").string()));
        if (m.at("format") != kFormat) throw ValidationError("store_format", "not a decomposition manifest");
        if (m.at("version") != kVersion)
            throw ValidationError("store_format", "unsupported store version " + m.at("version").dump());

        CMatrix grid = read_block(root, m.at("grid"));
        std::vector<IndexPair> win;
        for (const auto& c : m.at("window")) win.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
        std::vector<SeriesInfo> series;
        for (const auto& s : m.at("series")) {
            SeriesInfo si;
            si.name = s.at("name");
            si.length = s.at("length");
            si.lead = s.at("lead");
            si.total = s.at("total");
            si.x0 = s.at("x0");
            si.y = s.at("y");
            si.k = s.at("k");
            si.k_offset = s.at("k_offset");
            si.norm = s.at("norm");
            series.push_back(si);
        }
        std::vector<ArrayInfo> arrays;
        for (const auto& a : m.at("arrays")) arrays.push_back({a.at("name"), a.at("y0"), a.at("nx"), a.at("ny")});
        Field field = m.at("field") == "real" ? Field::real : Field::complex;
        PlanPtr plan = plan_from_parts(parse_variant(m.at("variant")), field, grid, Shape(std::move(win)),
                                       std::move(series), std::move(arrays), m.at("mosaic").at("rows"),
                                       m.at("mosaic").at("cols"));

        DecomposeOptions o;
        const auto& jo = m.at("options");
        o.method = parse_method(m.at("method"));
        o.rank_eps = jo.at("rank_eps");
        o.tol = jo.at("tol");
        o.max_restarts = jo.at("max_restarts");
        o.seed = jo.at("seed");
        Decomposition d(plan, o.method, o);
        auto sig = m.at("sigma").get<std::vector<double>>();
        CMatrix U = read_block(root, m.at("U")), V = read_block(root, m.at("V"));
        if (U.rows() != Eigen::Index(plan->L()) || V.rows() != Eigen::Index(plan->K()) ||
            U.cols() != Eigen::Index(sig.size()) || V.cols() != Eigen::Index(sig.size()))
            throw ValidationError("store_corrupt", "stored vectors do not match the stored plan");
        d.append(Eigen::Map<const RVector>(sig.data(), Eigen::Index(sig.size())), U, V);
        if (m.contains("basis")) d.set_gram_basis(std::make_shared<const CMatrix>(read_block(root, m.at("basis"))));
        if (meta) *meta = m.value("meta", std::map<std::string, std::string>{});
        return d;
    } catch (const json::exception& e) {
        throw ValidationError("store_corrupt", std::string("manifest: ") + e.what());
    }
}

}  // namespace shssa
