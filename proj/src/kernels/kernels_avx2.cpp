#include "kernels_internal.hpp"

// AVX2+FMA backend, compiled with -mavx2 -mfma on x86-64 only and reached
// through the runtime dispatch in kernels.cpp. Interleaved re/im layout of
// std::complex<double> is loaded two complex values per 256-bit vector.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace gkdvb::kernels::detail {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

// (a+bi)(c+di) for two packed complex values.
inline __m256d cmul(__m256d v, __m256d m) {
    __m256d m_re = _mm256_movedup_pd(m);        // (c, c, c', c')
    __m256d m_im = _mm256_permute_pd(m, 0xF);   // (d, d, d', d')
    __m256d v_sw = _mm256_permute_pd(v, 0x5);   // (b, a, b', a')
    __m256d t = _mm256_mul_pd(v_sw, m_im);      // (bd, ad, ...)
    return _mm256_fmaddsub_pd(v, m_re, t);      // (ac-bd, bc+ad, ...)
}

void cmul_inplace_avx2(std::complex<double>* y, const std::complex<double>* m,
                       std::size_t n) {
    auto* yd = reinterpret_cast<double*>(y);
    const auto* md = reinterpret_cast<const double*>(m);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(yd + 2 * i);
        __m256d mm = _mm256_loadu_pd(md + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul(v, mm));
    }
    for (; i < n; ++i) y[i] *= m[i];
}

void cmul_add_avx2(std::complex<double>* y, const std::complex<double>* m,
                   const std::complex<double>* x, std::size_t n) {
    auto* yd = reinterpret_cast<double*>(y);
    const auto* md = reinterpret_cast<const double*>(m);
    const auto* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d acc = _mm256_loadu_pd(yd + 2 * i);
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d mv = _mm256_loadu_pd(md + 2 * i);
        acc = _mm256_add_pd(acc, cmul(xv, mv));
        _mm256_storeu_pd(yd + 2 * i, acc);
    }
    for (; i < n; ++i) y[i] += m[i] * x[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        acc = _mm256_fmadd_pd(xv, yv, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return hsum(acc) + tail;
}

double weighted_abs2_sum_avx2(const double* w, const std::complex<double>* z,
                              std::size_t n) {
    const auto* zd = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d z0 = _mm256_loadu_pd(zd + 2 * i);      // re0 im0 re1 im1
        __m256d z1 = _mm256_loadu_pd(zd + 2 * i + 4);  // re2 im2 re3 im3
        // hadd -> (|z0|^2, |z2|^2, |z1|^2, |z3|^2)
        __m256d mag = _mm256_hadd_pd(_mm256_mul_pd(z0, z0),
                                     _mm256_mul_pd(z1, z1));
        __m256d wv = _mm256_loadu_pd(w + i);
        wv = _mm256_permute4x64_pd(wv, 0xD8);          // (w0, w2, w1, w3)
        acc = _mm256_fmadd_pd(wv, mag, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double re = z[i].real(), im = z[i].imag();
        tail += w[i] * (re * re + im * im);
    }
    return hsum(acc) + tail;
}

void mul_avx2(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void square_half_avx2(double* out, const double* u, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(u + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_mul_pd(v, v)));
    }
    for (; i < n; ++i) out[i] = 0.5 * u[i] * u[i];
}

void sub_avx2(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

} // namespace

const KernelTable& avx2_table() noexcept {
    static const KernelTable t = {
        cmul_inplace_avx2, cmul_add_avx2,    dot_avx2,
        weighted_abs2_sum_avx2, mul_avx2, square_half_avx2, sub_avx2,
    };
    return t;
}

bool avx2_supported() noexcept {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace gkdvb::kernels::detail

#endif // x86-64
