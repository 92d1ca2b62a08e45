#include "shssa/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shssa/errors.hpp"

namespace shssa {
namespace {

constexpr double kPanel = 160;   // panel edge in px
constexpr double kMargin = 12;
constexpr double kTitle = 16;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Layout {
    int cols, rows;
    double width, height;
};

Layout layout(std::size_t n) {
    int cols = std::max(1, int(std::ceil(std::sqrt(double(n)))));
    int rows = std::max(1, int((n + std::size_t(cols) - 1) / std::size_t(cols)));
    double cell = kPanel + kMargin + kTitle;
    return {cols, rows, cols * (kPanel + kMargin) + kMargin, rows * cell + kMargin};
}

std::string header(const Layout& l) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(l.width) + "\" height=\"" +
           fmt(l.height) + "\" viewBox=\"0 0 " + fmt(l.width) + " " + fmt(l.height) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// Origin of panel i.
std::pair<double, double> origin(const Layout& l, std::size_t i) {
    int c = int(i % std::size_t(l.cols)), r = int(i / std::size_t(l.cols));
    return {kMargin + c * (kPanel + kMargin), kMargin + r * (kPanel + kMargin + kTitle) + kTitle};
}

std::string panel_open(const Layout& l, std::size_t i, const std::string& label) {
    auto [x, y] = origin(l, i);
    return "<g class=\"panel\" transform=\"translate(" + fmt(x) + "," + fmt(y) + ")\">\n<title>" + label +
           "</title>\n<text x=\"0\" y=\"-4\" font-family=\"sans-serif\" font-size=\"11\">" + label +
           "</text>\n<rect width=\"" + fmt(kPanel) + "\" height=\"" + fmt(kPanel) +
           "\" fill=\"none\" stroke=\"#999\"/>\n";
}

struct Range {
    double lo, hi;
    double map(double v, double size) const { return hi > lo ? (v - lo) / (hi - lo) * size : size / 2; }
};

Range range_of(const RVector& v) {
    double lo = 0, hi = 0;
    bool any = false;
    for (double x : v)
        if (std::isfinite(x)) {
            lo = any ? std::min(lo, x) : x;
            hi = any ? std::max(hi, x) : x;
            any = true;
        }
    return {lo, hi};
}

std::string label_for(const Decomposition& d, int j, double total) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d (%.3g%%)", j + 1, total > 0 ? 100 * d.lambda(j) / total : 0.0);
    return buf;
}

const CMatrix& vectors(const Decomposition& d, bool factor) { return factor ? d.V() : d.U(); }

void check_index(const Decomposition& d, int j) {
    if (j < 0 || j >= d.size())
        throw ValidationError("index_range", "eigentriple " + std::to_string(j + 1) + " is not computed");
}

std::string gray(double t) {
    int g = int(std::lround(255 * (1 - std::clamp(t, 0.0, 1.0))));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
    return buf;
}

}  // namespace

std::string plot_vectors(const Decomposition& d, const std::vector<int>& indices, bool factor) {
    Layout l = layout(indices.size());
    std::string s = header(l);
    double total = trajectory_norm2(d.plan());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        int j = indices[i];
        check_index(d, j);
        RVector v = vectors(d, factor).col(j).real();
        Range r = range_of(v);
        s += panel_open(l, i, label_for(d, j, total));
        s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        Eigen::Index n = v.size();
        for (Eigen::Index k = 0; k < n; ++k) {
            double x = n > 1 ? double(k) / double(n - 1) * kPanel : kPanel / 2;
            s += fmt(x) + "," + fmt(kPanel - r.map(v[k], kPanel)) + (k + 1 < n ? " " : "");
        }
        s += "\"/>\n</g>\n";
    }
    return s + "</svg>\n";
}

std::string plot_paired(const Decomposition& d, const std::vector<std::pair<int, int>>& pairs) {
    Layout l = layout(pairs.size());
    std::string s = header(l);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [a, b] = pairs[i];
        check_index(d, a);
        check_index(d, b);
        RVector u = d.U().col(a).real(), v = d.U().col(b).real();
        // Shared scale keeps polygons undistorted.
        double m = std::max(u.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff());
        Range r{-m, m};
        s += panel_open(l, i, std::to_string(a + 1) + " vs " + std::to_string(b + 1));
        s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (Eigen::Index k = 0; k < u.size(); ++k)
            s += fmt(r.map(u[k], kPanel)) + "," + fmt(kPanel - r.map(v[k], kPanel)) + (k + 1 < u.size() ? " " : "");
        s += "\"/>\n</g>\n";
    }
    return s + "</svg>\n";
}

std::string plot_wcor(const RMatrix& w, int first_index) {
    Eigen::Index n = w.rows();
    double cell = n > 0 ? std::max(4.0, 400.0 / double(n)) : 4.0;
    double pad = 30, size = cell * double(n) + 2 * pad;
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(size) + "\" height=\"" +
                    fmt(size) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g class=\"wcor\">\n";
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double v = w(i, j);
            std::string fill = std::isfinite(v) ? gray(std::abs(v)) : "#ff8080";
            s += "<rect x=\"" + fmt(pad + double(j) * cell) + "\" y=\"" + fmt(pad + double(i) * cell) +
                 "\" width=\"" + fmt(cell) + "\" height=\"" + fmt(cell) + "\" fill=\"" + fill + "\"/>\n";
        }
    s += "</g>\n";
    int step = std::max<Eigen::Index>(1, n / 10);
    for (Eigen::Index i = 0; i < n; i += step) {
        std::string lab = std::to_string(first_index + i);
        s += "<text x=\"" + fmt(pad + (double(i) + 0.5) * cell) + "\" y=\"" + fmt(pad - 6) +
             "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" + lab + "</text>\n";
        s += "<text x=\"" + fmt(pad - 6) + "\" y=\"" + fmt(pad + (double(i) + 0.5) * cell + 3) +
             "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" + lab + "</text>\n";
    }
    return s + "</svg>\n";
}

std::string plot_arrays(const Decomposition& d, const std::vector<int>& indices, bool factor) {
    Layout l = layout(indices.size());
    std::string s = header(l);
    double total = trajectory_norm2(d.plan());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        int j = indices[i];
        check_index(d, j);
        CMatrix a = factor ? origin_array(d.plan(), d.V().col(j)) : window_array(d.plan(), d.U().col(j));
        RMatrix re = a.real();
        Range r = range_of(Eigen::Map<const RVector>(re.data(), re.size()));
        double cw = kPanel / double(std::max(a.rows(), a.cols()));
        s += panel_open(l, i, label_for(d, j, total));
        for (Eigen::Index y = 0; y < a.cols(); ++y)
            for (Eigen::Index x = 0; x < a.rows(); ++x) {
                if (!std::isfinite(re(x, y))) continue;
                // Rows run down (x), columns across (y).
                s += "<rect x=\"" + fmt(double(y) * cw) + "\" y=\"" + fmt(double(x) * cw) + "\" width=\"" +
                     fmt(cw) + "\" height=\"" + fmt(cw) + "\" fill=\"" + gray(r.map(re(x, y), 1.0)) + "\"/>\n";
            }
        s += "</g>\n";
    }
    return s + "</svg>\n";
}

}  // namespace shssa
