#include "kernels_internal.hpp"

// Reference backend. Every other backend is equivalence-tested against this.

namespace gkdvb::kernels::detail {
namespace {

void cmul_inplace_scalar(std::complex<double>* y, const std::complex<double>* m,
                         std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= m[i];
}

void cmul_add_scalar(std::complex<double>* y, const std::complex<double>* m,
                     const std::complex<double>* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += m[i] * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double weighted_abs2_sum_scalar(const double* w, const std::complex<double>* z,
                                std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = z[i].real(), im = z[i].imag();
        acc += w[i] * (re * re + im * im);
    }
    return acc;
}

void mul_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void square_half_scalar(double* out, const double* u, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * u[i] * u[i];
}

void sub_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

} // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable t = {
        cmul_inplace_scalar, cmul_add_scalar,    dot_scalar,
        weighted_abs2_sum_scalar, mul_scalar, square_half_scalar, sub_scalar,
    };
    return t;
}

} // namespace gkdvb::kernels::detail
