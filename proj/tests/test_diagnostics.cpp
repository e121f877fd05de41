#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkdvb/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gkdvb;
using std::numbers::pi;

namespace {

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SimConfig linear_single_mode(double lambda0, double T, double dt, int n) {
    SimConfig cfg;
    cfg.half_length = pi;
    cfg.n_points = n;
    cfg.dt = dt;
    cfg.horizon = T;
    cfg.nonlinearity.form = NonlinearityForm::none;
    cfg.damping_kind = DampingKind::constant;
    cfg.damping_params.lambda0 = lambda0;
    cfg.ic.kind = IcSpec::Kind::single_mode;
    cfg.ic.mode_k = 1;
    cfg.ic.amplitude = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("energy closed forms") {
    auto g = make_grid(pi, 128);
    CHECK(energy(zero_field(g)) == 0.0);
    Field s = field_from_function(g, [](double x) { return std::sin(x); });
    CHECK(energy(s) == doctest::Approx(pi / 2).epsilon(1e-12));
    Field s2 = field_from_function(g, [](double x) { return 2 * std::sin(x); });
    CHECK(energy(s2) == doctest::Approx(2 * pi).epsilon(1e-12));
}

TEST_CASE("dissipation residual: zero trajectory") {
    SimConfig cfg = linear_single_mode(0.5, 1.0, 1e-2, 64);
    cfg.ic.kind = IcSpec::Kind::zero;
    Trajectory tr = simulate(cfg);
    for (double r : dissipation_residual(tr)) CHECK(r == 0.0);
}

TEST_CASE("dissipation residual: diagonal linear system") {
    // identity is exact for the diagonal system; the residual is pure
    // trapezoid error, (dt^2/12) * 4 gamma^2 ~ 7.5e-9 at dt = 1e-4
    Trajectory tr = simulate(linear_single_mode(0.5, 2.0, 1e-4, 64));
    REQUIRE(tr.status == RunStatus::ok);
    for (double r : dissipation_residual(tr)) CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("dissipation residual: Burgers-KdV Gaussian run with halved-dt oracle") {
    SimConfig cfg;
    cfg.half_length = 32.0;
    cfg.n_points = 512;
    cfg.dt = 1e-3;
    cfg.horizon = 1.0;
    cfg.nonlinearity.form = NonlinearityForm::identity;
    cfg.damping_kind = DampingKind::zero;
    cfg.ic.kind = IcSpec::Kind::gaussian;
    cfg.ic.amplitude = 1.0;
    cfg.ic.width = 2.0;

    auto max_res = [](const Trajectory& tr) {
        double m = 0.0;
        for (double r : dissipation_residual(tr)) m = std::max(m, std::abs(r));
        return m;
    };

    Trajectory tr = simulate(cfg);
    REQUIRE(tr.status == RunStatus::ok);
    const double r1 = max_res(tr);
    CHECK(r1 < 1e-6);

    SimConfig half = cfg;
    half.dt = 5e-4;
    const double r2 = max_res(simulate(half));
    CHECK(r2 < r1);  // quadrature-dominated, shrinks with dt
}

TEST_CASE("weighted identity residual: linear single mode against closed form") {
    // (T/2)||u0||^2 = 0.5 int ||u||^2 + int (T-t)(||u_x||^2 + int b u^2):
    // for u = e^{-(xi^2+l0)t} sin(x) both sides equal T/2 * ||u0||^2 exactly.
    Trajectory tr = simulate(linear_single_mode(0.5, 2.0, 1e-3, 64));
    CHECK(std::abs(weighted_identity_residual(tr)) < 1e-6);

    SimConfig z = linear_single_mode(0.5, 1.0, 1e-2, 64);
    z.ic.kind = IcSpec::Kind::zero;
    CHECK(weighted_identity_residual(simulate(z)) == 0.0);
}

TEST_CASE("observability ratio: closed form for the diagonal system") {
    // ratio = 2 / (1 - e^{-2 gamma T}) with gamma = xi^2 + lambda0
    const double gamma = 1.5, T = 2.0;
    Trajectory tr = simulate(linear_single_mode(0.5, T, 1e-3, 64));
    const double want = 2.0 / (1.0 - std::exp(-2.0 * gamma * T));
    CHECK(observability_ratio(tr) == doctest::Approx(want).epsilon(1e-6));

    SimConfig z = linear_single_mode(0.5, 1.0, 1e-2, 64);
    z.ic.kind = IcSpec::Kind::zero;
    CHECK(observability_ratio(simulate(z)) == 0.0);
}

TEST_CASE("observability ratio: localized damping, stable under refinement") {
    SimConfig cfg;
    cfg.half_length = 32.0;
    cfg.n_points = 256;
    cfg.dt = 1e-3;
    cfg.horizon = 2.0;
    cfg.nonlinearity = {NonlinearityForm::signed_power, 2.0, 2.0};
    cfg.damping_kind = DampingKind::localized;
    cfg.damping_params = {1.0, 0.0, -5.0, 5.0, 1.0};
    cfg.ic.kind = IcSpec::Kind::random_band_limited;
    cfg.ic.amplitude = 0.5;
    cfg.ic.cutoff = 40;

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        cfg.ic.seed = seed;
        SimConfig fine = cfg;
        fine.n_points = 512;
        const double r_coarse = observability_ratio(simulate(cfg));
        const double r_fine = observability_ratio(simulate(fine));
        CHECK(std::isfinite(r_coarse));
        CHECK(std::isfinite(r_fine));
        CHECK(std::abs(r_fine - r_coarse) <= 0.10 * std::abs(r_coarse));
    }
}

TEST_CASE("decay_fit: exact synthetic exponential") {
    std::vector<double> ts, ns;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.05 * i;
        ts.push_back(t);
        ns.push_back(3.0 * std::exp(-0.7 * t));
    }
    DecayFit f = decay_fit(ts, ns, 0.0, 10.0);
    CHECK(std::abs(f.rate - 0.7) < 1e-10);
    CHECK(std::abs(f.amplitude - 3.0) < 1e-9);
    CHECK(std::abs(f.r_squared - 1.0) < 1e-10);
}

TEST_CASE("decay_fit: norm floor excludes the rounding plateau") {
    std::vector<double> ts, ns;
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.5 * i;
        ts.push_back(t);
        ns.push_back(std::max(std::exp(-2.0 * t), 1e-15));
    }
    // without the floor the plateau would drag the rate toward zero
    DecayFit f = decay_fit(ts, ns, 0.0, 50.0);
    CHECK(f.rate == doctest::Approx(2.0).epsilon(1e-9));

    std::vector<double> bad(ts.size(), 0.0);
    CHECK_THROWS_AS(decay_fit(ts, bad, 0.0, 50.0), std::invalid_argument);
}

TEST_CASE("decay_fit: exact linear rate xi^2 + lambda0") {
    Trajectory tr = simulate(linear_single_mode(0.5, 4.0, 1e-3, 256));
    DecayFit f = fit_trajectory_decay(tr, 0.8, 3.6);
    CHECK(std::abs(f.rate - 1.5) < 1e-6);
    CHECK(f.r_squared > 1.0 - 1e-12);
}

TEST_CASE("sobolev series: smoothing of the linear flow") {
    SimConfig cfg;
    cfg.half_length = pi;
    cfg.n_points = 128;
    cfg.dt = 1e-2;
    cfg.horizon = 1.0;
    cfg.snapshot_every = 25;
    cfg.nonlinearity.form = NonlinearityForm::none;
    cfg.damping_kind = DampingKind::zero;
    cfg.ic.kind = IcSpec::Kind::random_band_limited;
    cfg.ic.seed = 99;
    cfg.ic.amplitude = 1.0;
    cfg.ic.cutoff = 42;

    Trajectory tr = simulate(cfg);
    const std::vector<double> h3 = sobolev_series(tr, 3.0);
    const double n0 = std::sqrt(tr.ledger[0].l2_sq);
    CHECK(h3.back() <= 1.115 * n0);

    SimConfig z = cfg;
    z.ic.kind = IcSpec::Kind::zero;
    for (double v : sobolev_series(simulate(z), 2.0)) CHECK(v == 0.0);
}

TEST_CASE("gn_check: pointwise interpolation inequality margins") {
    auto g = make_grid(8.0, 256);
    CHECK(gn_check(zero_field(g)) == 0.0);

    // (1 - x^2)^2 on [-1, 1], zero-padded to the box
    Field bump = field_from_function(g, [](double x) {
        const double a = 1.0 - x * x;
        return std::abs(x) <= 1.0 ? a * a : 0.0;
    });
    CHECK(gn_check(bump) >= 0.0);

    // refusal on non-localized input
    Field flat = field_from_function(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(gn_check(flat), std::invalid_argument);
}

TEST_CASE("gn_check: 1000 seeded localized fields") {
    auto g = make_grid(16.0, 256);
    std::mt19937_64 rng(31415);
    double min_margin = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        const double a1 = 2 * u01(rng) - 1, a2 = 2 * u01(rng) - 1,
                     a3 = 2 * u01(rng) - 1;
        Field f = field_from_function(g, [&](double x) {
            return std::exp(-x * x / 4.0) *
                   (a1 * std::sin(1.7 * x) + a2 * std::cos(0.9 * x) +
                    a3 * std::sin(3.1 * x));
        });
        min_margin = std::min(min_margin, gn_check(f));
    }
    CHECK(min_margin >= -1e-9);
}

TEST_CASE("gn_interp_check: intermediate derivative ratios stay bounded") {
    auto g = make_grid(16.0, 256);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double a1 = 2 * u01(rng) - 1, a2 = 2 * u01(rng) - 1;
        Field f = field_from_function(g, [&](double x) {
            return std::exp(-x * x / 4.0) *
                   (a1 * std::sin(2.0 * x) + a2 * std::cos(1.1 * x));
        });
        for (int m = 1; m <= 3; ++m)
            for (int j = 0; j <= m; ++j) {
                const double r = gn_interp_check(f, j, m);
                CHECK(std::isfinite(r));
                CHECK(r >= 0.0);
                CHECK(r < 10.0);
            }
    }
    CHECK(gn_interp_check(zero_field(g), 1, 2) == 0.0);
    CHECK_THROWS_AS(gn_interp_check(zero_field(g), 2, 1),
                    std::invalid_argument);
}

TEST_CASE("lipschitz probe") {
    SimConfig cfg;
    cfg.half_length = 32.0;
    cfg.n_points = 256;
    cfg.dt = 1e-3;
    cfg.horizon = 2.0;
    cfg.nonlinearity.form = NonlinearityForm::identity;
    cfg.damping_kind = DampingKind::zero;
    cfg.ic.kind = IcSpec::Kind::gaussian;  // carried but unused by the probe
    auto g = make_grid(cfg.half_length, cfg.n_points);

    Field u0 = field_from_function(
        g, [](double x) { return std::exp(-x * x / 4.0); });

    // identical data -> 0 by convention
    LipschitzProbe same = lipschitz_probe(cfg, u0, u0);
    CHECK(same.sup_ratio == 0.0);
    CHECK(same.h1_ratio == 0.0);

    auto perturbed = [&](double eps) {
        return field_from_function(g, [eps](double x) {
            return std::exp(-x * x / 4.0) * (1.0 + eps) +
                   eps * std::exp(-(x - 1) * (x - 1) / 4.0);
        });
    };
    const LipschitzProbe p1 = lipschitz_probe(cfg, u0, perturbed(1e-3));
    const LipschitzProbe p2 = lipschitz_probe(cfg, u0, perturbed(5e-4));
    CHECK(std::isfinite(p1.sup_ratio));
    CHECK(p1.sup_ratio > 0.0);
    // linearization regime: halving the perturbation moves the ratio < 5%
    CHECK(std::abs(p2.sup_ratio - p1.sup_ratio) <= 0.05 * p1.sup_ratio);

    // linear contractive flow: ratio bounded by 1
    SimConfig lin = cfg;
    lin.nonlinearity.form = NonlinearityForm::none;
    lin.damping_kind = DampingKind::constant;
    lin.damping_params.lambda0 = 0.5;
    const LipschitzProbe lp = lipschitz_probe(lin, u0, perturbed(1e-2));
    CHECK(lp.sup_ratio <= 1.0 + 1e-12);
}
