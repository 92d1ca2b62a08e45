#include "shssa/shape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shssa/errors.hpp"
#include "shssa/hankel.hpp"

namespace shssa {

Shape::Shape(std::vector<IndexPair> elements) : elems_(std::move(elements)) {
    for (const auto& p : elems_)
        if (p.x < 1 || p.y < 1)
            throw ValidationError("index_range", "shape indices must be >= 1");
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    index_();
}

void Shape::index_() {
    bx_ = by_ = 0;
    for (const auto& p : elems_) {
        bx_ = std::max(bx_, p.x);
        by_ = std::max(by_, p.y);
    }
    lookup_.assign(std::size_t(bx_) * std::size_t(by_), -1);
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        const auto& p = elems_[i];
        lookup_[std::size_t(p.x - 1) + std::size_t(p.y - 1) * std::size_t(bx_)] = int(i);
    }
}

Shape Shape::rectangle(int nx, int ny) {
    if (nx < 0 || ny < 0) throw ValidationError("index_range", "rectangle sides must be >= 0");
    std::vector<IndexPair> e;
    e.reserve(std::size_t(nx) * std::size_t(ny));
    for (int y = 1; y <= ny; ++y)
        for (int x = 1; x <= nx; ++x) e.push_back({x, y});
    Shape s;
    s.elems_ = std::move(e);
    s.index_();
    return s;
}

Shape Shape::from_mask(const BoolGrid& mask) {
    std::vector<IndexPair> e;
    for (Eigen::Index y = 0; y < mask.cols(); ++y)
        for (Eigen::Index x = 0; x < mask.rows(); ++x)
            if (mask(x, y)) e.push_back({int(x + 1), int(y + 1)});
    Shape s;
    s.elems_ = std::move(e);
    s.index_();
    return s;
}

bool Shape::contains(IndexPair p) const {
    if (p.x < 1 || p.y < 1 || p.x > bx_ || p.y > by_) return false;
    return lookup_[std::size_t(p.x - 1) + std::size_t(p.y - 1) * std::size_t(bx_)] >= 0;
}

std::size_t Shape::index_of(IndexPair p) const {
    if (!contains(p))
        throw ValidationError("not_found", "index (" + std::to_string(p.x) + "," +
                                               std::to_string(p.y) + ") is not in the shape");
    return std::size_t(lookup_[std::size_t(p.x - 1) + std::size_t(p.y - 1) * std::size_t(bx_)]);
}

BoolGrid Shape::to_mask(int nx, int ny) const {
    if (nx < bx_ || ny < by_) throw ValidationError("shape_grid", "shape exceeds the mask grid");
    BoolGrid m = BoolGrid::Constant(nx, ny, false);
    for (const auto& p : elems_) m(p.x - 1, p.y - 1) = true;
    return m;
}

Shape minkowski_shifted_sum(const Shape& a, const Shape& b) {
    if (a.empty() || b.empty()) return Shape();
    int nx = a.box_x() + b.box_x() - 1, ny = a.box_y() + b.box_y() - 1;
    RMatrix w = qh_weights(a, b, nx, ny);
    return Shape::from_mask((w.array() > 0.5));
}

Shape compute_k_shape(const Shape& L, const Shape& N) {
    if (L.empty() || N.empty()) return Shape();
    int nx = N.box_x(), ny = N.box_y();
    int kx = nx - L.box_x() + 1, ky = ny - L.box_y() + 1;
    if (kx < 1 || ky < 1) return Shape();
    CVector ind = CVector::Ones(Eigen::Index(N.size()));
    FourierWorkspace ws(scatter(N, ind, nx, ny));
    Shape origins = Shape::rectangle(kx, ky);
    // count(k) = number of window cells landing on N when placed at k
    CVector count = qh_matvec(ws, L, origins, CVector::Ones(Eigen::Index(L.size())),
                              Direction::adjoint);
    double full = double(L.size());
    std::vector<IndexPair> keep;
    for (std::size_t i = 0; i < origins.size(); ++i)
        if (std::abs(count[Eigen::Index(i)].real() - full) < 0.5) keep.push_back(origins[i]);
    return Shape(std::move(keep));
}

Shape effective_n_shape(const Shape& L, const Shape& K) { return minkowski_shifted_sum(K, L); }

Shape shape_difference(const Shape& a, const Shape& b) {
    std::vector<IndexPair> out;
    for (const auto& p : a)
        if (!b.contains(p)) out.push_back(p);
    return Shape(std::move(out));
}

Shape circle_mask(int R) {
    if (R < 1) throw ValidationError("mask_param", "circle radius must be >= 1");
    int n = 2 * R - 1;
    std::vector<IndexPair> e;
    double lim = R - 0.5;
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x)
            if (std::hypot(double(x - R), double(y - R)) < lim) e.push_back({x, y});
    return Shape(std::move(e));
}

Shape triangle_mask(int side) {
    if (side < 1) throw ValidationError("mask_param", "triangle side must be >= 1");
    std::vector<IndexPair> e;
    for (int y = 1; y <= side; ++y)
        for (int x = 1; x + y <= side + 1; ++x) e.push_back({x, y});
    return Shape(std::move(e));
}

CMatrix scatter(const Shape& s, const CVector& values, int nx, int ny) {
    if (std::size_t(values.size()) != s.size())
        throw ValidationError("size_mismatch", "scatter: values do not match the shape size");
    if (s.box_x() > nx || s.box_y() > ny)
        throw ValidationError("shape_grid", "scatter: shape exceeds the grid");
    CMatrix g = CMatrix::Zero(nx, ny);
    if (s.is_rectangle()) {
        g.topLeftCorner(s.box_x(), s.box_y()) =
            Eigen::Map<const CMatrix>(values.data(), s.box_x(), s.box_y());
        return g;
    }
    for (std::size_t i = 0; i < s.size(); ++i) g(s[i].x - 1, s[i].y - 1) = values[Eigen::Index(i)];
    return g;
}

CVector gather(const Shape& s, const CMatrix& grid) {
    if (s.box_x() > grid.rows() || s.box_y() > grid.cols())
        throw ValidationError("shape_grid", "gather: shape exceeds the grid");
    CVector out(Eigen::Index(s.size()));
    if (s.is_rectangle()) {
        Eigen::Map<CMatrix>(out.data(), s.box_x(), s.box_y()) =
            grid.topLeftCorner(s.box_x(), s.box_y());
        return out;
    }
    for (std::size_t i = 0; i < s.size(); ++i) out[Eigen::Index(i)] = grid(s[i].x - 1, s[i].y - 1);
    return out;
}

}  // namespace shssa
