#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <regex>
#include <set>

#include "oracle.hpp"
#include "shssa/errors.hpp"
#include "shssa/io.hpp"
#include "shssa/plot.hpp"
#include "shssa/reconstruction.hpp"
#include "shssa/store.hpp"

using namespace shssa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("shssa_test_io_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Csv, SeriesRoundTrip) {
    io::SeriesTable t = io::parse_csv_series("a,b\n1,2.5\nNA,-3\n0.1,\n");
    ASSERT_EQ(t.names, (std::vector<std::string>{"a", "b"}));
    EXPECT_TRUE(std::isnan(t.columns[0][1]));
    EXPECT_TRUE(std::isnan(t.columns[1][2]));
    EXPECT_EQ(t.columns[0][2], 0.1);
    std::string s = io::format_csv_series(t);
    EXPECT_EQ(s, "a,b\n1,2.5\nNA,-3\n0.1,NA\n");
    io::SeriesTable u = io::parse_csv_series(s);
    EXPECT_EQ(u.columns[1][1], -3);

    std::mt19937_64 g(90);
    io::SeriesTable r{{"x"}, {{}}};
    for (int i = 0; i < 50; ++i) r.columns[0].push_back(std::normal_distribution<double>()(g));
    EXPECT_EQ(io::parse_csv_series(io::format_csv_series(r)).columns[0], r.columns[0]);

    io::SeriesTable ragged{{"p", "q"}, {{1, 2, 3}, {4}}};
    EXPECT_EQ(io::format_csv_series(ragged, "?"), "p,q\n1,4\n2,?\n3,?\n");
    EXPECT_TRUE(std::isnan(io::parse_csv_series("v\n-\n", "-").columns[0][0]));
    EXPECT_THROW(io::parse_csv_series("a,b\n1\n"), ValidationError);
    EXPECT_THROW(io::parse_csv_series("a\nx1\n"), ValidationError);
    EXPECT_THROW(io::parse_csv_series(""), ValidationError);
}

TEST(Csv, MatrixRoundTrip) {
    fs::path dir = scratch("matrix");
    fs::create_directories(dir);
    RMatrix m(3, 4);
    m << 1, 2, 3, 4, 5, std::numeric_limits<double>::quiet_NaN(), 7, 8, 9, 10, 11, 12.25;
    io::write_file_atomic((dir / "m.csv").string(), io::format_csv_matrix(m));
    RMatrix r = io::read_grid((dir / "m.csv").string());
    ASSERT_EQ(r.rows(), 3);
    ASSERT_EQ(r.cols(), 4);
    EXPECT_TRUE(std::isnan(r(1, 1)));
    EXPECT_EQ(r(2, 3), 12.25);
    EXPECT_EQ(r(0, 3), 4);
    EXPECT_FALSE(fs::exists(dir / "m.csv.tmp"));
}

TEST(Pgm, AsciiAndBinary) {
    fs::path dir = scratch("pgm");
    fs::create_directories(dir);
    RMatrix m(2, 3);
    m << 0, 1, 2, 3, 4, 5;
    for (bool bin : {false, true})
        for (int maxval : {5, 255, 1000}) {
            std::string f = (dir / ("a" + std::to_string(bin) + std::to_string(maxval) + ".pgm")).string();
            io::write_file_atomic(f, io::format_pgm(m, bin, maxval));
            RMatrix r = io::read_grid(f);
            EXPECT_LT((r - m * (maxval / 5.0)).cwiseAbs().maxCoeff(), 0.5) << bin << maxval;
        }
    io::write_file_atomic((dir / "c.pgm").string(), "P2\n# comment\n2 1\n9\n3 9\n");
    RMatrix c = io::read_pgm((dir / "c.pgm").string());
    EXPECT_EQ(c(0, 1), 9);
    io::write_file_atomic((dir / "bad.pgm").string(), "P2\n2 2\n9\n1 2 3\n");
    EXPECT_THROW(io::read_pgm((dir / "bad.pgm").string()), ValidationError);
    EXPECT_THROW(io::read_pgm((dir / "none.pgm").string()), ValidationError);
}

TEST(Mask, TextAndPgm) {
    BoolGrid m = io::parse_mask("010\n1 1 1\n0,1,0\n");
    EXPECT_EQ(Shape::from_mask(m).size(), 5u);
    EXPECT_TRUE(m(1, 0));
    EXPECT_FALSE(m(0, 0));
    EXPECT_EQ(io::format_mask(m), "010\n111\n010\n");
    EXPECT_TRUE((io::parse_mask(io::format_mask(circle_mask(6).to_mask())) == circle_mask(6).to_mask()).all());
    EXPECT_THROW(io::parse_mask("01\n1\n"), ValidationError);
    EXPECT_THROW(io::parse_mask("0x\n"), ValidationError);

    fs::path dir = scratch("mask");
    fs::create_directories(dir);
    io::write_file_atomic((dir / "m.pgm").string(), "P2\n3 2\n255\n0 255 0\n7 0 0\n");
    BoolGrid p = io::read_mask((dir / "m.pgm").string());
    EXPECT_EQ(p.rows(), 2);
    EXPECT_TRUE(p(0, 1));
    EXPECT_TRUE(p(1, 0));
    EXPECT_FALSE(p(1, 2));
}

TEST(Store, RoundTripEveryVariant) {
    std::mt19937_64 g(91);
    RMatrix holes = oracle::random_cmatrix(g, 9, 8, false).real();
    holes(4, 4) = std::numeric_limits<double>::quiet_NaN();
    RVector pad = RVector::Constant(25, std::numeric_limits<double>::quiet_NaN());
    pad.segment(3, 20) = oracle::random_cvector(g, 20, false).real();
    std::vector<PlanPtr> plans{
        plan_1d(oracle::random_cvector(g, 30, false).real(), 10),
        plan_mssa({oracle::random_cvector(g, 22, false).real(), pad}, 8, MssaPacking::oned, {"x", "y"}, true),
        plan_cssa(oracle::random_cvector(g, 24, true), 9),
        plan_shaped(holes, circle_mask(2)),
        plan_mosaic({{oracle::random_cvector(g, 8, false).real()}, {oracle::random_cvector(g, 7, false).real()}},
                    {3, 2}),
        plan_m2d({RMatrix(oracle::random_cmatrix(g, 5, 5, false).real()),
                  RMatrix(oracle::random_cmatrix(g, 5, 5, false).real())}, 2, 2)};
    int i = 0;
    for (const auto& p : plans) {
        for (auto m : {SvdMethod::gram, SvdMethod::truncated}) {
            DecomposeOptions o;
            o.method = m;
            auto d = decompose(p, 3, o);
            fs::path dir = scratch("store" + std::to_string(i++));
            save_decomposition(d, dir.string(), {{"input1", "a.csv"}});
            std::map<std::string, std::string> meta;
            Decomposition e = load_decomposition(dir.string(), &meta);
            EXPECT_EQ(meta.at("input1"), "a.csv");
            EXPECT_EQ(e.sigma(), d.sigma());
            EXPECT_EQ(e.U(), d.U());
            EXPECT_EQ(e.V(), d.V());
            EXPECT_EQ(e.method(), d.method());
            const auto& q = e.plan();
            EXPECT_EQ(q.variant, p->variant);
            EXPECT_EQ(q.field, p->field);
            EXPECT_EQ(q.k_shape, p->k_shape);
            EXPECT_EQ(q.n_shape, p->n_shape);
            EXPECT_EQ(q.weights, p->weights);
            ASSERT_EQ(q.series.size(), p->series.size());
            for (std::size_t s = 0; s < q.series.size(); ++s) {
                EXPECT_EQ(q.series[s].name, p->series[s].name);
                EXPECT_EQ(q.series[s].k, p->series[s].k);
                EXPECT_EQ(q.series[s].k_offset, p->series[s].k_offset);
                EXPECT_EQ(q.series[s].norm, p->series[s].norm);
            }
            EXPECT_EQ(reconstruct_indices(e, {0, 2}), reconstruct_indices(d, {0, 2}));
            // Extension after loading matches extension of the original.
            auto d2 = d;
            extend(d2, 4);
            extend(e, 4);
            EXPECT_NEAR(e.sigma()[3], d2.sigma()[3], 1e-9 * d.sigma()[0]) << variant_name(p->variant);
        }
    }
}

TEST(Store, Errors) {
    fs::path dir = scratch("store_err");
    EXPECT_THROW(load_decomposition(dir.string()), ValidationError);
    auto d = decompose(plan_1d(RVector::LinSpaced(20, 1, 20), 5), 2);
    save_decomposition(d, dir.string());
    io::write_file_atomic((dir / "U.f64").string(), "short");
    EXPECT_THROW(load_decomposition(dir.string()), ValidationError);
    io::write_file_atomic((dir / "manifest.json").string(), "{\"format\": \"other\"}");
    EXPECT_THROW(load_decomposition(dir.string()), ValidationError);
    io::write_file_atomic((dir / "manifest.json").string(), "{");
    EXPECT_THROW(load_decomposition(dir.string()), ValidationError);
}

TEST(Store, BinaryLayoutIsLittleEndianComplex) {
    fs::path dir = scratch("store_layout");
    auto d = decompose(plan_1d(RVector::LinSpaced(12, 1, 12), 4), 1);
    save_decomposition(d, dir.string());
    std::string bytes = io::read_file((dir / "grid.f64").string());
    ASSERT_EQ(bytes.size(), 12u * 16u);
    // Second grid value is 2.0 = 0x4000000000000000, imaginary part 0.
    EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 7]), 0x40);
    for (int b = 0; b < 7; ++b) EXPECT_EQ(bytes[std::size_t(16 + b)], 0);
    for (int b = 24; b < 32; ++b) EXPECT_EQ(bytes[std::size_t(b)], 0);
}

TEST(Plot, PairedSineIsTwelveGon) {
    RVector x(119);
    for (int k = 1; k <= 119; ++k) x[k - 1] = 2 + std::cos(2 * std::numbers::pi * k / 12);
    // L = 48 and K = 72 are multiples of 12: ET1 is the constant, ET2-ET3 the sine pair.
    auto d = decompose(plan_1d(x, 48), 3);
    std::string svg = plot_paired(d, {{1, 2}});
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
    std::set<std::pair<long, long>> vertices;
    std::string pts = m[1];
    std::regex pair("(-?[0-9.]+),(-?[0-9.]+)");
    for (auto it = std::sregex_iterator(pts.begin(), pts.end(), pair); it != std::sregex_iterator(); ++it)
        vertices.insert({std::lround(std::stod((*it)[1]) * 100), std::lround(std::stod((*it)[2]) * 100)});
    EXPECT_EQ(vertices.size(), 12u);
    EXPECT_NE(svg.find("<title>2 vs 3</title>"), std::string::npos);
}

TEST(Plot, DocumentsAreWellFormed) {
    auto d = decompose(plan_2d(RMatrix(RMatrix::Random(8, 8)), 3, 3), 4);
    auto count = [](const std::string& s, const std::string& sub) {
        std::size_t n = 0;
        for (auto p = s.find(sub); p != std::string::npos; p = s.find(sub, p + 1)) ++n;
        return n;
    };
    std::string v = plot_vectors(d, {0, 1, 2});
    EXPECT_EQ(count(v, "<g class=\"panel\""), 3u);
    EXPECT_EQ(v.rfind("</svg>\n"), v.size() - 7);
    std::string a = plot_arrays(d, {0, 1}, true);
    EXPECT_EQ(count(a, "<g class=\"panel\""), 2u);
    EXPECT_EQ(count(a, "<rect x="), 2u * 36u);
    RMatrix w = RMatrix::Identity(3, 3);
    w(0, 1) = w(1, 0) = std::numeric_limits<double>::quiet_NaN();
    std::string h = plot_wcor(w);
    EXPECT_EQ(count(h, "#ff8080"), 2u);
    EXPECT_EQ(count(h, "#000000"), 3u);
    EXPECT_EQ(count(h, "#ffffff"), 4u);
    EXPECT_THROW(plot_vectors(d, {7}), ValidationError);
}
