#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkdvb/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gkdvb;
using std::numbers::pi;

namespace {

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Band-limited random field: modes 1..cutoff with conjugate symmetry.
Field random_band_limited(GridPtr g, std::mt19937_64& rng, int cutoff) {
    Spectrum s;
    s.grid = g;
    s.coeffs.assign(g->n_points, {0.0, 0.0});
    for (int k = 1; k <= cutoff; ++k) {
        s.coeffs[k] = {2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0};
        s.coeffs[g->n_points - k] = std::conj(s.coeffs[k]);
    }
    return inverse(s);
}

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        num += d * d;
        den += b.values[i] * b.values[i];
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace

TEST_CASE("make_grid basics") {
    auto g = make_grid(pi, 16);
    CHECK(g->dx == doctest::Approx(2.0 * pi / 16).epsilon(1e-15));
    // integer wavenumbers -8..7 when half_length = pi
    double min_k = 1e300, max_k = -1e300;
    for (double xi : g->wavenumbers) {
        min_k = std::min(min_k, xi);
        max_k = std::max(max_k, xi);
    }
    CHECK(min_k == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(max_k == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(g->wavenumbers[0] == 0.0);

    // dx * n = 2 * half_length
    CHECK(g->dx * g->n_points == doctest::Approx(2 * pi).epsilon(1e-15));
}

TEST_CASE("make_grid derived example: (32, 512)") {
    auto g = make_grid(32.0, 512);
    CHECK(g->dx == doctest::Approx(0.125).epsilon(1e-15));
    double max_abs_k = 0.0;
    for (double xi : g->wavenumbers) max_abs_k = std::max(max_abs_k, std::abs(xi));
    // max |xi| = pi * 256 / 32 = 8 pi (the Nyquist mode)
    CHECK(max_abs_k == doctest::Approx(8.0 * pi).epsilon(1e-14));
}

TEST_CASE("make_grid wavenumber symmetry about zero") {
    auto g = make_grid(5.0, 64);
    const int n = g->n_points;
    for (int k = 1; k < n / 2; ++k)
        CHECK(g->wavenumbers[k] == doctest::Approx(-g->wavenumbers[n - k]).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 48), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(std::nan(""), 64), std::invalid_argument);
}

TEST_CASE("transform: zero field -> zero spectrum") {
    auto g = make_grid(pi, 64);
    Spectrum s = transform(zero_field(g));
    for (auto c : s.coeffs) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("transform: sin(x) has exactly two nonzero modes at xi = +-1") {
    auto g = make_grid(pi, 64);
    Field f = field_from_function(g, [](double x) { return std::sin(x); });
    Spectrum s = transform(f);
    int nonzero = 0;
    for (int i = 0; i < g->n_points; ++i) {
        if (std::abs(s.coeffs[i]) > 1e-12) {
            ++nonzero;
            CHECK(std::abs(std::abs(g->wavenumbers[i]) - 1.0) < 1e-14);
            CHECK(std::abs(s.coeffs[i]) == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    CHECK(nonzero == 2);
}

TEST_CASE("spectra of real fields are conjugate-symmetric") {
    auto g = make_grid(6.0, 128);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        Field f = random_band_limited(g, rng, 60);
        for (auto& v : f.values) v += 0.1;  // nonzero mean too
        Spectrum s = transform(f);
        const int n = g->n_points;
        double scale = 0.0;
        for (auto c : s.coeffs) scale = std::max(scale, std::abs(c));
        for (int k = 1; k < n / 2; ++k)
            CHECK(std::abs(s.coeffs[k] - std::conj(s.coeffs[n - k])) <=
                  1e-12 * scale);
        CHECK(std::abs(s.coeffs[0].imag()) <= 1e-12 * scale);
    }
}

TEST_CASE("round trip and Parseval over 100 seeded fields") {
    auto g = make_grid(10.0, 128);
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        Field f = random_band_limited(g, rng, 40);
        Field back = inverse(transform(f));
        CHECK(rel_l2_diff(back, f) < 1e-12);

        const double quad = l2_norm(f);
        const double spec = sobolev_norm(f, 0.0);
        CHECK(std::abs(spec - quad) < 1e-12 * std::max(1.0, quad));
    }
}

TEST_CASE("spectral derivative closed forms") {
    // n = 32 keeps the Nyquist^3 amplification of FFT rounding below the
    // 1e-12 pointwise tolerance for the order-3 closed form.
    auto g = make_grid(pi, 32);
    Field f = field_from_function(g, [](double x) { return std::sin(x); });
    Spectrum s = transform(f);

    Field d1 = inverse(spectral_derivative(s, 1));
    Field d3 = inverse(spectral_derivative(s, 3));
    for (int j = 0; j < g->n_points; ++j) {
        const double x = g->points[j];
        CHECK(std::abs(d1.values[j] - std::cos(x)) < 1e-12);
        CHECK(std::abs(d3.values[j] + std::cos(x)) < 1e-12);
    }

    // derivative of a constant vanishes for every order >= 1
    Field c = field_from_function(g, [](double) { return 3.25; });
    for (int order = 1; order <= 4; ++order) {
        Field dc = inverse(spectral_derivative(transform(c), order));
        CHECK(max_abs(dc) < 1e-12);
    }

    CHECK_THROWS_AS(spectral_derivative(s, 5), std::invalid_argument);
    CHECK_THROWS_AS(spectral_derivative(s, -1), std::invalid_argument);
}

TEST_CASE("derivative composition on band-limited fields") {
    auto g = make_grid(4.0, 128);
    std::mt19937_64 rng(99);
    Field f = random_band_limited(g, rng, 30);
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; a + b <= 4 && b <= 2; ++b) {
            Spectrum sa = spectral_derivative(spectral_derivative(transform(f), b), a);
            Spectrum sab = spectral_derivative(transform(f), a + b);
            Field fa = inverse(sa), fab = inverse(sab);
            const double scale = std::max(1.0, max_abs(fab));
            for (size_t j = 0; j < fa.values.size(); ++j)
                CHECK(std::abs(fa.values[j] - fab.values[j]) < 1e-11 * scale);
        }
    }
}

TEST_CASE("integration by parts is exact on band-limited fields") {
    auto g = make_grid(7.0, 128);
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        Field f = random_band_limited(g, rng, 40);
        Field h = random_band_limited(g, rng, 40);
        Field fx = inverse(spectral_derivative(transform(f), 1));
        Field hx = inverse(spectral_derivative(transform(h), 1));
        const double lhs = l2_inner(fx, h);
        const double rhs = -l2_inner(f, hx);
        CHECK(std::abs(lhs - rhs) <
              1e-11 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("dealias: mode census") {
    auto g = make_grid(pi, 64);
    // full white spectrum
    Spectrum s;
    s.grid = g;
    s.coeffs.assign(64, {1.0, 0.0});
    Spectrum d = dealias(s);
    int surviving = 0;
    for (auto c : d.coeffs)
        if (std::abs(c) > 0) ++surviving;
    CHECK(surviving == 43);  // k in {-21,...,21}

    // single mode above cutoff -> zero
    Spectrum hi;
    hi.grid = g;
    hi.coeffs.assign(64, {0.0, 0.0});
    hi.coeffs[31] = {1.0, 0.0};  // k = 31 = n/2 - 1
    Spectrum dhi = dealias(hi);
    for (auto c : dhi.coeffs) CHECK(std::abs(c) == 0.0);

    // spectrum supported inside |k| <= n/3 is untouched
    Spectrum lo;
    lo.grid = g;
    lo.coeffs.assign(64, {0.0, 0.0});
    lo.coeffs[21] = {0.3, -0.4};
    lo.coeffs[64 - 21] = std::conj(lo.coeffs[21]);
    Spectrum dlo = dealias(lo);
    for (int i = 0; i < 64; ++i) CHECK(dlo.coeffs[i] == lo.coeffs[i]);
}

TEST_CASE("sobolev_norm closed forms for sin(x)") {
    auto g = make_grid(pi, 64);
    Field f = field_from_function(g, [](double x) { return std::sin(x); });
    CHECK(sobolev_norm(f, 0.0) ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
    CHECK(sobolev_norm(f, 1.0) ==
          doctest::Approx(std::sqrt(2.0) * std::sqrt(pi)).epsilon(1e-12));
    CHECK(sobolev_norm(zero_field(g), 2.5) == 0.0);
    CHECK_THROWS_AS(sobolev_norm(f, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_norm(f, 4.5), std::invalid_argument);
}

TEST_CASE("l2_inner closed forms") {
    auto g = make_grid(pi, 128);
    Field s = field_from_function(g, [](double x) { return std::sin(x); });
    Field c = field_from_function(g, [](double x) { return std::cos(x); });
    CHECK(l2_inner(s, s) == doctest::Approx(pi).epsilon(1e-12));
    CHECK(l2_inner(s, zero_field(g)) == 0.0);
    CHECK(std::abs(l2_inner(s, c)) < 1e-12);

    auto g2 = make_grid(2 * pi, 128);
    Field other = zero_field(g2);
    CHECK_THROWS_AS(l2_inner(s, other), std::invalid_argument);
}

TEST_CASE("tail_fraction") {
    auto g = make_grid(10.0, 128);
    CHECK(tail_fraction(zero_field(g)) == 0.0);
    // mass concentrated at the center has negligible tail
    Field center = field_from_function(
        g, [](double x) { return std::exp(-x * x); });
    CHECK(tail_fraction(center) < 1e-12);
    // mass at the boundary is all tail
    Field edge = field_from_function(g, [](double x) {
        return std::abs(x) >= 9.5 ? 1.0 : 0.0;
    });
    CHECK(tail_fraction(edge) == doctest::Approx(1.0));
}
