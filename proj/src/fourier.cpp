#include "shssa/fourier.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "shssa/errors.hpp"

namespace shssa::fft {
namespace {

// FFTW planning is not thread-safe but executing an existing plan through the
// new-array interface is, so plans are created under a lock and reused.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(nx, ny, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::size_t n = std::size_t(nx) * std::size_t(ny);
        auto* in = fftw_alloc_complex(n);
        auto* out = fftw_alloc_complex(n);
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        // Column-major Nx-by-Ny data is row-major Ny-by-Nx.
        fftw_plan p = ny == 1 ? fftw_plan_dft_1d(nx, in, out, sign, flags)
                              : fftw_plan_dft_2d(ny, nx, in, out, sign, flags);
        fftw_free(in);
        fftw_free(out);
        if (!p) throw ComputeError("fft_plan", "failed to create transform plan");
        plans_.emplace(key, p);
        return p;
    }

    std::size_t size() {
        std::lock_guard<std::mutex> lock(mu_);
        return plans_.size();
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(const Complex* in, Complex* out, int nx, int ny, int sign) {
    if (nx < 1 || ny < 1) throw ValidationError("fft_length", "transform length must be at least 1");
    fftw_plan p = cache().get(nx, ny, sign);
    // Out-of-place complex transforms leave the input untouched.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

CVector dft(const CVector& v) {
    CVector out(v.size());
    run(v.data(), out.data(), int(v.size()), 1, FFTW_FORWARD);
    return out;
}

CVector idft(const CVector& v) {
    CVector out(v.size());
    run(v.data(), out.data(), int(v.size()), 1, FFTW_BACKWARD);
    out /= double(v.size());
    return out;
}

CMatrix dft2(const CMatrix& x) {
    CMatrix out(x.rows(), x.cols());
    run(x.data(), out.data(), int(x.rows()), int(x.cols()), FFTW_FORWARD);
    return out;
}

CMatrix idft2(const CMatrix& x) {
    CMatrix out(x.rows(), x.cols());
    run(x.data(), out.data(), int(x.rows()), int(x.cols()), FFTW_BACKWARD);
    out /= double(x.size());
    return out;
}

std::size_t cached_plans() { return cache().size(); }

}  // namespace shssa::fft
