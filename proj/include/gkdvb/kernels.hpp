#pragma once

// Runtime-dispatched arithmetic kernels for the hot inner loops: complex
// multiplier application, pointwise products, and quadrature reductions.
// A scalar reference backend always exists; AVX2 (x86-64) and NEON (aarch64)
// variants are selected at startup when the CPU supports them.

#include <complex>
#include <cstddef>

namespace gkdvb::kernels {

enum class Backend { scalar, avx2, neon };

Backend active_backend() noexcept;
const char* backend_name(Backend b) noexcept;

// Force a backend (used by the equivalence tests). Returns false and leaves
// the dispatch unchanged if the requested backend is unavailable here.
bool set_backend(Backend b) noexcept;

// y[i] *= m[i]
void cmul_inplace(std::complex<double>* y, const std::complex<double>* m,
                  std::size_t n);

// y[i] += m[i] * x[i]
void cmul_add(std::complex<double>* y, const std::complex<double>* m,
              const std::complex<double>* x, std::size_t n);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

// sum_i w[i] * |z[i]|^2
double weighted_abs2_sum(const double* w, const std::complex<double>* z,
                         std::size_t n);

// out[i] = a[i] * b[i]
void mul(double* out, const double* a, const double* b, std::size_t n);

// out[i] = 0.5 * u[i] * u[i]
void square_half(double* out, const double* u, std::size_t n);

// out[i] = a[i] - b[i]
void sub(double* out, const double* a, const double* b, std::size_t n);

} // namespace gkdvb::kernels
