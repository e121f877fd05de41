#include "gkdvb/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace gkdvb::fft {
namespace {

struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution on new arrays is.
Plans plans_for(std::size_t n) {
    static std::mutex mtx;
    static std::map<std::size_t, Plans> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    Plans p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(n, p);
    return p;
}

fftw_complex* as_fftw(std::complex<double>* p) {
    return reinterpret_cast<fftw_complex*>(p);
}

} // namespace

void forward(const std::complex<double>* in, std::complex<double>* out,
             std::size_t n) {
    Plans p = plans_for(n);
    fftw_execute_dft(p.fwd, as_fftw(const_cast<std::complex<double>*>(in)),
                     as_fftw(out));
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

void backward(const std::complex<double>* in, std::complex<double>* out,
              std::size_t n) {
    Plans p = plans_for(n);
    fftw_execute_dft(p.bwd, as_fftw(const_cast<std::complex<double>*>(in)),
                     as_fftw(out));
}

} // namespace gkdvb::fft
