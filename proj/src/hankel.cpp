#include "shssa/hankel.hpp"

#include <cmath>
#include <string>

#include "shssa/errors.hpp"
#include "shssa/fourier.hpp"

namespace shssa {
namespace {

void check_fits(const Shape& s, int nx, int ny, const char* what) {
    if (s.box_x() > nx || s.box_y() > ny)
        throw ValidationError("shape_grid", std::string(what) + " shape exceeds the grid");
}

// ifft(X^ .* conj(fft(A))): circular correlation, out[p] = sum_m x[p+m] conj(a[m]).
CMatrix correlate(const FourierWorkspace& ws, const CMatrix& a) {
    CMatrix ah = fft::dft2(a);
    return fft::idft2(ws.transformed().cwiseProduct(ah.conjugate()));
}

}  // namespace

CMatrix circulant_multiply(CirculantKind kind, const CMatrix& c, const CMatrix& v) {
    if (c.rows() != v.rows() || c.cols() != v.cols())
        throw ValidationError("size_mismatch", "circulant generator and operand differ in size");
    bool block = kind == CirculantKind::toeplitz_block_toeplitz ||
                 kind == CirculantKind::hankel_block_hankel;
    if (!block && c.cols() != 1)
        throw ValidationError("size_mismatch", "1D circulant expects column vectors");
    CMatrix ch = fft::dft2(c);
    if (kind == CirculantKind::toeplitz || kind == CirculantKind::toeplitz_block_toeplitz)
        return fft::idft2(ch.cwiseProduct(fft::dft2(v)));
    // sum_j c_{i+j} v_j = correlation of c with conj(v)
    CMatrix vh = fft::dft2(v.conjugate());
    return fft::idft2(ch.cwiseProduct(vh.conjugate()));
}

FourierWorkspace::FourierWorkspace(CMatrix grid) : grid_(std::move(grid)) {
    if (grid_.size() == 0) throw ValidationError("empty_grid", "embedded data grid is empty");
    hat_ = fft::dft2(grid_);
}

CVector qh_matvec(const FourierWorkspace& ws, const Shape& L, const Shape& K, const CVector& v,
                  Direction dir) {
    check_fits(L, ws.nx(), ws.ny(), "window");
    check_fits(K, ws.nx(), ws.ny(), "origin");
    if (dir == Direction::forward) {
        if (std::size_t(v.size()) != K.size())
            throw ValidationError("size_mismatch", "forward matvec expects |K| entries");
        CMatrix r = correlate(ws, scatter(K, v.conjugate(), ws.nx(), ws.ny()));
        return gather(L, r);
    }
    if (std::size_t(v.size()) != L.size())
        throw ValidationError("size_mismatch", "adjoint matvec expects |L| entries");
    CMatrix r = correlate(ws, scatter(L, v, ws.nx(), ws.ny()));
    return gather(K, r).conjugate();
}

CMatrix diagsums(const CVector& U, const CVector& V, const Shape& L, const Shape& K, int nx, int ny) {
    check_fits(L, nx, ny, "window");
    check_fits(K, nx, ny, "origin");
    if (std::size_t(U.size()) != L.size() || std::size_t(V.size()) != K.size())
        throw ValidationError("size_mismatch", "diagsums vector sizes do not match the shapes");
    CMatrix uh = fft::dft2(scatter(L, U, nx, ny));
    CMatrix vh = fft::dft2(scatter(K, V, nx, ny));
    return fft::idft2(uh.cwiseProduct(vh));
}

RMatrix qh_weights(const Shape& L, const Shape& K, int nx, int ny) {
    CMatrix d = diagsums(CVector::Ones(L.size()), CVector::Ones(K.size()), L, K, nx, ny);
    // Counts are integers; the transform leaves rounding noise only.
    return d.real().array().round().matrix();
}

ShapedArray qh_hankelize(const CVector& U, const CVector& V, const Shape& L, const Shape& K,
                         const RMatrix& weights) {
    int nx = int(weights.rows()), ny = int(weights.cols());
    CMatrix d = diagsums(U, V, L, K, nx, ny);
    std::vector<IndexPair> cells;
    std::vector<Complex> vals;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (weights(i, j) > 0) {
                cells.push_back({i + 1, j + 1});
                vals.push_back(d(i, j) / weights(i, j));
            }
    ShapedArray out{Shape(std::move(cells)), CVector(Eigen::Index(vals.size()))};
    for (std::size_t i = 0; i < vals.size(); ++i) out.values[Eigen::Index(i)] = vals[i];
    return out;
}

CVector hankel_matvec(const CVector& series, const CVector& v, Eigen::Index out_len) {
    Eigen::Index n = series.size();
    if (out_len < 1 || v.size() < 1 || out_len + v.size() - 1 != n)
        throw ValidationError("size_mismatch", "hankel_matvec requires N = L + K - 1");
    FourierWorkspace ws(series);
    return qh_matvec(ws, Shape::rectangle(int(out_len), 1), Shape::rectangle(int(v.size()), 1), v,
                     Direction::forward);
}

RVector hankel_weights(Eigen::Index L, Eigen::Index K) {
    if (L < 1 || K < 1) throw ValidationError("size_mismatch", "window sizes must be positive");
    RMatrix w = qh_weights(Shape::rectangle(int(L), 1), Shape::rectangle(int(K), 1),
                           int(L + K - 1), 1);
    return w.col(0);
}

CVector rank_one_hankelize(const CVector& U, const CVector& V) {
    if (U.size() < 1 || V.size() < 1)
        throw ValidationError("size_mismatch", "rank_one_hankelize needs nonempty vectors");
    int n = int(U.size() + V.size() - 1);
    Shape L = Shape::rectangle(int(U.size()), 1), K = Shape::rectangle(int(V.size()), 1);
    CMatrix d = diagsums(U, V, L, K, n, 1);
    RMatrix w = qh_weights(L, K, n, 1);
    return d.col(0).cwiseQuotient(w.col(0).cast<Complex>());
}

}  // namespace shssa
