#pragma once

#include "gkdvb/kernels.hpp"

namespace gkdvb::kernels::detail {

struct KernelTable {
    void (*cmul_inplace)(std::complex<double>*, const std::complex<double>*,
                         std::size_t);
    void (*cmul_add)(std::complex<double>*, const std::complex<double>*,
                     const std::complex<double>*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*weighted_abs2_sum)(const double*, const std::complex<double>*,
                                std::size_t);
    void (*mul)(double*, const double*, const double*, std::size_t);
    void (*square_half)(double*, const double*, std::size_t);
    void (*sub)(double*, const double*, const double*, std::size_t);
};

const KernelTable& scalar_table() noexcept;

#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table() noexcept;
bool avx2_supported() noexcept;
#endif

#if defined(__aarch64__)
const KernelTable& neon_table() noexcept;
#endif

} // namespace gkdvb::kernels::detail
