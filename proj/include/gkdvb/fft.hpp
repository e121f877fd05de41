#pragma once

// Thin FFTW3 front end with a mutex-guarded plan cache. Plans use
// FFTW_ESTIMATE so plan selection (and therefore rounding) is reproducible
// run to run, and FFTW_UNALIGNED so callers may pass ordinary vectors.

#include <complex>
#include <cstddef>

namespace gkdvb::fft {

// out_k = (1/n) sum_j in_j exp(-2*pi*i*j*k/n). in and out must be distinct.
void forward(const std::complex<double>* in, std::complex<double>* out,
             std::size_t n);

// out_j = sum_k in_k exp(+2*pi*i*j*k/n). in and out must be distinct.
void backward(const std::complex<double>* in, std::complex<double>* out,
              std::size_t n);

} // namespace gkdvb::fft
