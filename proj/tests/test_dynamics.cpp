#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkdvb/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gkdvb;
using std::numbers::pi;

namespace {

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

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

} // namespace

TEST_CASE("a_eval and A_primitive closed forms") {
    NonlinearitySpec id{NonlinearityForm::identity, 1.0, 1.0};
    CHECK(a_eval(id, 2.0) == 2.0);
    CHECK(A_primitive(id, 2.0) == 2.0);

    NonlinearitySpec sp{NonlinearityForm::signed_power, 2.0, 1.0};
    CHECK(a_eval(sp, -3.0) == doctest::Approx(-9.0).epsilon(1e-15));
    CHECK(A_primitive(sp, -3.0) == doctest::Approx(9.0).epsilon(1e-15));

    NonlinearitySpec ab{NonlinearityForm::abs_power, 3.0, 1.0};
    CHECK(a_eval(ab, -2.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(A_primitive(ab, -2.0) == doctest::Approx(-4.0).epsilon(1e-15));

    for (auto form : {NonlinearityForm::none, NonlinearityForm::identity,
                      NonlinearityForm::signed_power,
                      NonlinearityForm::abs_power}) {
        NonlinearitySpec s{form, 2.0, 1.0};
        CHECK(a_eval(s, 0.0) == 0.0);
        CHECK(A_primitive(s, 0.0) == 0.0);
    }
}

TEST_CASE("A' = a by central differences on [-10, 10]") {
    for (auto form : {NonlinearityForm::identity, NonlinearityForm::signed_power,
                      NonlinearityForm::abs_power}) {
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            NonlinearitySpec s{form, p, 1.0};
            for (int i = 0; i <= 100; ++i) {
                const double mu = -10.0 + 0.2 * i;
                const double h = 1e-6 * std::max(1.0, std::abs(mu));
                const double fd =
                    (A_primitive(s, mu + h) - A_primitive(s, mu - h)) /
                    (2.0 * h);
                const double a = a_eval(s, mu);
                CHECK(std::abs(fd - a) <= 1e-6 * std::max(1.0, std::abs(a)));
            }
        }
    }
}

TEST_CASE("growth checks: canonical forms pass, exp surrogate fails") {
    NonlinearitySpec id{NonlinearityForm::identity, 1.0, 1.0};
    CHECK(check_growth(id, 50.0, 2001).pass);

    // mu^2 <= 1 + mu^2 holds with C = 1 at order zero, but the derivative
    // bound |a'| = 2|mu| <= C(1+|mu|) forces C >= 2 = p(p-1).
    CHECK(min_growth_constant(NonlinearityForm::signed_power, 2.0) == 2.0);
    NonlinearitySpec sp{NonlinearityForm::signed_power, 2.0, 2.0};
    CHECK(check_growth(sp, 50.0, 2001).pass);
    NonlinearitySpec sp_tight{NonlinearityForm::signed_power, 2.0, 1.0};
    auto tight = check_growth(sp_tight, 50.0, 2001);
    CHECK_FALSE(tight.pass);
    CHECK(tight.worst_order == 1);

    // test hook: a(mu) = e^mu violates every polynomial growth bound
    auto rep = check_growth_fn([](double mu) { return std::exp(mu); }, 2.0,
                               1.0, 50.0, 2001);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("make_damping profiles") {
    auto g = make_grid(32.0, 512);

    DampingParams cp;
    cp.lambda0 = 0.5;
    DampingProfile c = make_damping(DampingKind::constant, cp, g);
    for (double b : c.samples.values) CHECK(b == 0.5);

    DampingParams ip;
    ip.lambda0 = 0.2;
    ip.bump_amplitude = 0.22;
    DampingProfile ind = make_damping(DampingKind::indefinite, ip, g);
    // b(0) = 0.2 - 0.22 = -0.02: genuinely indefinite
    const int j0 = 256;  // x = 0
    CHECK(ind.samples.grid->points[j0] == 0.0);
    CHECK(ind.samples.values[j0] == doctest::Approx(-0.02).epsilon(1e-12));

    DampingParams lp;
    lp.lambda0 = 1.0;
    lp.alpha = -5.0;
    lp.beta = 5.0;
    lp.width = 1.0;
    DampingProfile loc = make_damping(DampingKind::localized, lp, g);
    for (int j = 0; j < g->n_points; ++j) {
        const double x = g->points[j];
        if (std::abs(x) < 4.0 - 1e-12) CHECK(loc.samples.values[j] == 0.0);
        if (std::abs(x) > 5.0 + 1e-12) CHECK(loc.samples.values[j] == 1.0);
        CHECK(loc.samples.values[j] >= 0.0);
    }

    DampingParams bad = ip;
    bad.bump_amplitude = -1.0;
    CHECK_THROWS_AS(make_damping(DampingKind::indefinite, bad, g),
                    std::invalid_argument);
    DampingParams bad2 = lp;
    bad2.alpha = 5.0;
    bad2.beta = -5.0;
    CHECK_THROWS_AS(make_damping(DampingKind::localized, bad2, g),
                    std::invalid_argument);
    DampingParams bad3 = lp;
    bad3.width = 6.0;  // > (beta-alpha)/2
    CHECK_THROWS_AS(make_damping(DampingKind::localized, bad3, g),
                    std::invalid_argument);
}

TEST_CASE("localized profile is C^1 across the transition") {
    auto g = make_grid(32.0, 4096);
    DampingParams lp{1.0, 0.0, -5.0, 5.0, 1.0};
    DampingProfile loc = make_damping(DampingKind::localized, lp, g);
    // finite-difference derivative stays bounded by the smoothstep slope
    const double slope_max = 1.5 * lp.lambda0 / lp.width + 0.1;
    for (int j = 1; j + 1 < g->n_points; ++j) {
        const double d =
            (loc.samples.values[j + 1] - loc.samples.values[j - 1]) /
            (2.0 * g->dx);
        CHECK(std::abs(d) <= slope_max);
    }
}

TEST_CASE("c_p formula anchors") {
    CHECK(std::abs(c_p_constant(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(c_p_constant(2.0) - 0.75) < 1e-15);
}

TEST_CASE("check_hyp_b: indefinite preset with the Gaussian integral oracle") {
    auto g = make_grid(32.0, 512);
    DampingParams ip;
    ip.lambda0 = 0.2;
    ip.bump_amplitude = 0.22;
    DampingProfile d = make_damping(DampingKind::indefinite, ip, g);

    HypReport rep = check_hyp_b(d, 1.0);
    CHECK(rep.pass);
    // ||lambda1||_{L^1} = 0.22 * sqrt(pi): quadrature against the closed form
    CHECK(std::abs(rep.lhs - 0.22 * std::sqrt(pi)) < 1e-8);
    CHECK(rep.rhs == doctest::Approx(std::sqrt(0.2)).epsilon(1e-12));
    CHECK(rep.margin == doctest::Approx(0.0573).epsilon(2e-3));

    // same Gaussian cross-check at p = 2: ||A e^{-x^2}||_{L^2} = A (pi/2)^{1/4}
    HypReport rep2 = check_hyp_b(d, 2.0);
    CHECK(std::abs(rep2.lhs - 0.22 * std::pow(pi / 2.0, 0.25)) < 1e-8);

    CHECK_THROWS_AS(
        check_hyp_b(make_damping(DampingKind::localized,
                                 DampingParams{1.0, 0.0, -5.0, 5.0, 1.0}, g),
                    2.0),
        std::invalid_argument);
}

TEST_CASE("check_hyp_b monotonicity: scaling lambda1 up never rescues a failure") {
    auto g = make_grid(32.0, 512);
    for (double amp : {0.5, 0.8, 1.5}) {
        DampingParams p1{0.2, amp, 0, 0, 0};
        DampingParams p2{0.2, 2.0 * amp, 0, 0, 0};
        const HypReport r1 =
            check_hyp_b(make_damping(DampingKind::indefinite, p1, g), 1.0);
        const HypReport r2 =
            check_hyp_b(make_damping(DampingKind::indefinite, p2, g), 1.0);
        if (!r1.pass) CHECK_FALSE(r2.pass);
        CHECK(r2.lhs == doctest::Approx(2.0 * r1.lhs).epsilon(1e-12));
    }
}

TEST_CASE("check_hyp_a") {
    auto g = make_grid(32.0, 512);
    DampingParams lp{1.0, 0.0, -5.0, 5.0, 1.0};
    CHECK(check_hyp_a(make_damping(DampingKind::localized, lp, g)).pass);

    CHECK_FALSE(check_hyp_a(make_damping(DampingKind::zero, {}, g)).pass);

    DampingParams cp;
    cp.lambda0 = 1.0;
    CHECK(check_hyp_a(make_damping(DampingKind::constant, cp, g)).pass);
}

TEST_CASE("rhs_nonlinear closed forms") {
    auto g = make_grid(pi, 64);
    NonlinearitySpec id{NonlinearityForm::identity, 1.0, 1.0};
    DampingProfile none = make_damping(DampingKind::zero, {}, g);

    Field z = zero_field(g);
    Field rz = rhs_nonlinear(z, id, none);
    CHECK(max_abs(rz) == 0.0);

    Field s = field_from_function(g, [](double x) { return std::sin(x); });
    Field r = rhs_nonlinear(s, id, none);
    for (int j = 0; j < g->n_points; ++j) {
        const double want = -0.5 * std::sin(2.0 * g->points[j]);
        CHECK(std::abs(r.values[j] - want) < 1e-10);
    }

    DampingParams cp;
    cp.lambda0 = 1.0;
    DampingProfile one = make_damping(DampingKind::constant, cp, g);
    Field r2 = rhs_nonlinear(s, id, one);
    for (int j = 0; j < g->n_points; ++j) {
        const double x = g->points[j];
        const double want = -0.5 * std::sin(2.0 * x) - std::sin(x);
        CHECK(std::abs(r2.values[j] - want) < 1e-10);
    }
}

TEST_CASE("flux term is L2-orthogonal to u (identity form, rough fields)") {
    // A(u) = u^2/2 is a trig polynomial of a band-limited u, so the
    // orthogonality is exact up to rounding for arbitrarily rough fields.
    auto g = make_grid(16.0, 256);
    std::mt19937_64 rng(42);
    DampingProfile none = make_damping(DampingKind::zero, {}, g);
    NonlinearitySpec spec{NonlinearityForm::identity, 1.0, 1.0};
    for (int trial = 0; trial < 10; ++trial) {
        Field u = random_band_limited(g, rng, 40);
        Field flux = rhs_nonlinear(u, spec, none);
        const double ip = l2_inner(flux, u);
        CHECK(std::abs(ip) < 1e-9 * std::max(1.0, l2_inner(u, u)));
    }
}

TEST_CASE("flux term is L2-orthogonal to u (power forms, resolved fields)") {
    // |u|^p kinks at zero crossings put algebraic tails at the quadrature
    // frequency, so the power forms meet the 1e-9 bound on the smooth,
    // small-amplitude, localized states the local theory works with.
    auto g = make_grid(32.0, 512);
    std::mt19937_64 rng(7);
    DampingProfile none = make_damping(DampingKind::zero, {}, g);
    for (int trial = 0; trial < 8; ++trial) {
        const double a1 = 2 * u01(rng) - 1, a2 = 2 * u01(rng) - 1;
        Field u = field_from_function(g, [&](double x) {
            return 0.1 * std::exp(-x * x / 16.0) *
                   (a1 * std::sin(0.7 * x) + a2 * std::cos(1.3 * x));
        });
        REQUIRE(tail_fraction(u) < 1e-3);
        for (auto form :
             {NonlinearityForm::signed_power, NonlinearityForm::abs_power}) {
            NonlinearitySpec spec{form, 2.0, 1.0};
            Field flux = rhs_nonlinear(u, spec, none);
            const double ip = l2_inner(flux, u);
            CHECK(std::abs(ip) < 1e-9 * std::max(1.0, l2_inner(u, u)));
        }
    }
}
