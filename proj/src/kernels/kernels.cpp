#include "kernels_internal.hpp"

#include <cstdlib>
#include <cstring>

namespace gkdvb::kernels {

namespace {

using detail::KernelTable;

struct Dispatch {
    const KernelTable* table;
    Backend backend;
};

Dispatch pick_default() noexcept {
    // GKDVB_KERNEL_BACKEND=scalar|avx2|neon overrides the CPU probe; an
    // unavailable request falls through to the probe.
    if (const char* env = std::getenv("GKDVB_KERNEL_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0)
            return {&detail::scalar_table(), Backend::scalar};
#if defined(__x86_64__) || defined(_M_X64)
        if (std::strcmp(env, "avx2") == 0 && detail::avx2_supported())
            return {&detail::avx2_table(), Backend::avx2};
#endif
#if defined(__aarch64__)
        if (std::strcmp(env, "neon") == 0)
            return {&detail::neon_table(), Backend::neon};
#endif
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (detail::avx2_supported())
        return {&detail::avx2_table(), Backend::avx2};
#endif
#if defined(__aarch64__)
    return {&detail::neon_table(), Backend::neon};
#endif
    return {&detail::scalar_table(), Backend::scalar};
}

Dispatch& dispatch() noexcept {
    static Dispatch d = pick_default();
    return d;
}

} // namespace

Backend active_backend() noexcept { return dispatch().backend; }

const char* backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

bool set_backend(Backend b) noexcept {
    switch (b) {
        case Backend::scalar:
            dispatch() = {&detail::scalar_table(), Backend::scalar};
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (detail::avx2_supported()) {
                dispatch() = {&detail::avx2_table(), Backend::avx2};
                return true;
            }
#endif
            return false;
        case Backend::neon:
#if defined(__aarch64__)
            dispatch() = {&detail::neon_table(), Backend::neon};
            return true;
#else
            return false;
#endif
    }
    return false;
}

void cmul_inplace(std::complex<double>* y, const std::complex<double>* m,
                  std::size_t n) {
    dispatch().table->cmul_inplace(y, m, n);
}

void cmul_add(std::complex<double>* y, const std::complex<double>* m,
              const std::complex<double>* x, std::size_t n) {
    dispatch().table->cmul_add(y, m, x, n);
}

double dot(const double* x, const double* y, std::size_t n) {
    return dispatch().table->dot(x, y, n);
}

double weighted_abs2_sum(const double* w, const std::complex<double>* z,
                         std::size_t n) {
    return dispatch().table->weighted_abs2_sum(w, z, n);
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
    dispatch().table->mul(out, a, b, n);
}

void square_half(double* out, const double* u, std::size_t n) {
    dispatch().table->square_half(out, u, n);
}

void sub(double* out, const double* a, const double* b, std::size_t n) {
    dispatch().table->sub(out, a, b, n);
}

} // namespace gkdvb::kernels
