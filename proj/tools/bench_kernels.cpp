// Microbenchmark for the dispatched kernels: scalar reference vs the SIMD
// backend picked at runtime. Not part of the test suite.

#include "gkdvb/kernels.hpp"

#include <chrono>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

using namespace gkdvb;
using cplx = std::complex<double>;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_loop(F&& body, int reps) {
    body();  // warm up
    const double t0 = now();
    for (int r = 0; r < reps; ++r) body();
    return (now() - t0) / reps;
}

void bench_backend(kernels::Backend b, size_t n, int reps) {
    if (!kernels::set_backend(b)) return;
    std::mt19937_64 rng(1);
    auto rnd = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<cplx> y(n), m(n), x(n);
    std::vector<double> a(n), bb(n), w(n), out(n);
    for (size_t i = 0; i < n; ++i) {
        y[i] = {rnd(), rnd()};
        m[i] = {rnd(), rnd()};
        x[i] = {rnd(), rnd()};
        a[i] = rnd();
        bb[i] = rnd();
        w[i] = rnd();
    }

    volatile double sink = 0.0;
    const double t_cmul = time_loop(
        [&] { kernels::cmul_inplace(y.data(), m.data(), n); }, reps);
    const double t_cmul_add = time_loop(
        [&] { kernels::cmul_add(y.data(), m.data(), x.data(), n); }, reps);
    const double t_dot = time_loop(
        [&] { sink = kernels::dot(a.data(), bb.data(), n); }, reps);
    const double t_wsum = time_loop(
        [&] { sink = kernels::weighted_abs2_sum(w.data(), y.data(), n); },
        reps);
    const double t_mul = time_loop(
        [&] { kernels::mul(out.data(), a.data(), bb.data(), n); }, reps);
    (void)sink;

    std::printf("%-7s n=%-7zu cmul %6.2f  cmul_add %6.2f  dot %6.2f  "
                "wabs2 %6.2f  mul %6.2f   [ns/elem]\n",
                kernels::backend_name(b), n, 1e9 * t_cmul / n,
                1e9 * t_cmul_add / n, 1e9 * t_dot / n, 1e9 * t_wsum / n,
                1e9 * t_mul / n);
}

} // namespace

int main() {
    std::printf("default backend: %s\n",
                kernels::backend_name(kernels::active_backend()));
    for (size_t n : {512u, 4096u, 65536u}) {
        const int reps = static_cast<int>(4'000'000 / n) + 1;
        bench_backend(kernels::Backend::scalar, n, reps);
        bench_backend(kernels::Backend::avx2, n, reps);
        bench_backend(kernels::Backend::neon, n, reps);
    }
    return 0;
}
