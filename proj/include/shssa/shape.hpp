#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "shssa/types.hpp"

namespace shssa {

/// Lattice index, 1-based. x runs down the rows, y across the columns.
struct IndexPair {
    int x = 1;
    int y = 1;

    /// Lexicographic order with x fastest, i.e. sorted by (y, x).
    friend constexpr auto operator<=>(const IndexPair& a, const IndexPair& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
    friend constexpr bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// (a.x + b.x - 1, a.y + b.y - 1)
constexpr IndexPair shifted_sum(IndexPair a, IndexPair b) {
    return {a.x + b.x - 1, a.y + b.y - 1};
}

/// Finite set of lattice indices kept in column-major order.
///
/// A dense lookup table over the bounding box gives O(1) membership and
/// ordinal queries. Shapes are immutable once built.
class Shape {
public:
    Shape() = default;

    /// Sorts and deduplicates. Throws ValidationError on indices < 1.
    explicit Shape(std::vector<IndexPair> elements);

    static Shape rectangle(int nx, int ny);
    /// Cells (i, j) with mask(i-1, j-1) true.
    static Shape from_mask(const BoolGrid& mask);

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<IndexPair>& elements() const { return elems_; }
    const IndexPair& operator[](std::size_t i) const { return elems_[i]; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    /// Largest x and y present; (0, 0) for the empty shape.
    int box_x() const { return bx_; }
    int box_y() const { return by_; }

    bool contains(IndexPair p) const;
    /// 0-based position of p in the ordering. Throws ValidationError if absent.
    std::size_t index_of(IndexPair p) const;

    /// True if the shape is exactly {1..box_x} x {1..box_y}.
    bool is_rectangle() const { return size() == std::size_t(bx_) * std::size_t(by_); }

    /// Indicator over an nx-by-ny grid.
    BoolGrid to_mask(int nx, int ny) const;
    BoolGrid to_mask() const { return to_mask(bx_, by_); }

    friend bool operator==(const Shape& a, const Shape& b) { return a.elems_ == b.elems_; }

private:
    void index_();

    std::vector<IndexPair> elems_;
    std::vector<int> lookup_;  // bx_*by_ entries, -1 when absent
    int bx_ = 0;
    int by_ = 0;
};

/// Partially indexed array: one value per shape cell, in shape order.
struct ShapedArray {
    Shape shape;
    CVector values;
};

/// {a +- b : a in A, b in B}
Shape minkowski_shifted_sum(const Shape& a, const Shape& b);

/// Maximal set of origins k such that L +- {k} lies inside N.
///
/// Counts, for every origin in N's bounding box, how many window cells land
/// on N (an FFT correlation) and keeps origins where the count equals |L|.
Shape compute_k_shape(const Shape& L, const Shape& N);

/// Cells actually covered by the trajectory matrix: K +- L.
Shape effective_n_shape(const Shape& L, const Shape& K);

/// Elements of a that are not in b.
Shape shape_difference(const Shape& a, const Shape& b);

/// Disc inscribed in a (2R-1) x (2R-1) box: cells whose center is closer
/// than R - 1/2 to the box center.
Shape circle_mask(int R);

/// Right isosceles triangle with the right angle at (1,1): i + j <= side + 1.
Shape triangle_mask(int side);

/// Places shape values on an nx-by-ny grid, zero elsewhere.
CMatrix scatter(const Shape& s, const CVector& values, int nx, int ny);
/// Reads grid values at shape cells, in shape order.
CVector gather(const Shape& s, const CMatrix& grid);

}  // namespace shssa
