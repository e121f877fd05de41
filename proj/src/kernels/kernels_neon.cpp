#include "kernels_internal.hpp"

// NEON backend for aarch64. One complex<double> per 128-bit vector.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace gkdvb::kernels::detail {
namespace {

// (a+bi)(c+di) = (ac-bd) + (ad+bc)i
inline float64x2_t cmul(float64x2_t v, float64x2_t m) {
    float64x2_t m_re = vdupq_laneq_f64(m, 0);  // (c, c)
    float64x2_t m_im = vdupq_laneq_f64(m, 1);  // (d, d)
    float64x2_t v_sw = vextq_f64(v, v, 1);     // (b, a)
    const float64x2_t sign = {-1.0, 1.0};
    float64x2_t t = vmulq_f64(vmulq_f64(v_sw, m_im), sign);  // (-bd, ad)
    return vfmaq_f64(t, v, m_re);                            // (ac-bd, bc+ad)
}

void cmul_inplace_neon(std::complex<double>* y, const std::complex<double>* m,
                       std::size_t n) {
    auto* yd = reinterpret_cast<double*>(y);
    const auto* md = reinterpret_cast<const double*>(m);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(yd + 2 * i);
        float64x2_t mm = vld1q_f64(md + 2 * i);
        vst1q_f64(yd + 2 * i, cmul(v, mm));
    }
}

void cmul_add_neon(std::complex<double>* y, const std::complex<double>* m,
                   const std::complex<double>* x, std::size_t n) {
    auto* yd = reinterpret_cast<double*>(y);
    const auto* md = reinterpret_cast<const double*>(m);
    const auto* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t acc = vld1q_f64(yd + 2 * i);
        float64x2_t prod = cmul(vld1q_f64(xd + 2 * i), vld1q_f64(md + 2 * i));
        vst1q_f64(yd + 2 * i, vaddq_f64(acc, prod));
    }
}

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double weighted_abs2_sum_neon(const double* w, const std::complex<double>* z,
                              std::size_t n) {
    const auto* zd = reinterpret_cast<const double*>(z);
    double s = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t z0 = vld1q_f64(zd + 2 * i);
        float64x2_t z1 = vld1q_f64(zd + 2 * i + 2);
        float64x2_t mag = vpaddq_f64(vmulq_f64(z0, z0), vmulq_f64(z1, z1));
        s += vaddvq_f64(vmulq_f64(vld1q_f64(w + i), mag));
    }
    for (; i < n; ++i) {
        const double re = z[i].real(), im = z[i].imag();
        s += w[i] * (re * re + im * im);
    }
    return s;
}

void mul_neon(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void square_half_neon(double* out, const double* u, std::size_t n) {
    const float64x2_t half = vdupq_n_f64(0.5);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(u + i);
        vst1q_f64(out + i, vmulq_f64(half, vmulq_f64(v, v)));
    }
    for (; i < n; ++i) out[i] = 0.5 * u[i] * u[i];
}

void sub_neon(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

} // namespace

const KernelTable& neon_table() noexcept {
    static const KernelTable t = {
        cmul_inplace_neon, cmul_add_neon,    dot_neon,
        weighted_abs2_sum_neon, mul_neon, square_half_neon, sub_neon,
    };
    return t;
}

} // namespace gkdvb::kernels::detail

#endif // aarch64
