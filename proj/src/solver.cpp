#include "gkdvb/solver.hpp"

#include "gkdvb/fft.hpp"
#include "gkdvb/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gkdvb {

namespace {

using cplx = std::complex<double>;

// Linear symbol L_k = i*zeta_k^3 - xi_k^2 (- lambda0 when folded), with the
// dispersive part zeroed at Nyquist.
std::vector<cplx> linear_symbol(const Grid& g, double folded_lambda0) {
    std::vector<cplx> L(g.n_points);
    const int nyq = g.nyquist_index();
    for (int i = 0; i < g.n_points; ++i) {
        const double xi = g.wavenumbers[i];
        const double zeta = i == nyq ? 0.0 : xi;
        L[i] = cplx(-xi * xi - folded_lambda0, zeta * zeta * zeta);
    }
    return L;
}

double uniform01(std::mt19937_64& rng) {
    // (x >> 11) * 2^-53: pinned across implementations, unlike
    // std::uniform_real_distribution.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

const char* ic_kind_name(IcSpec::Kind k) {
    switch (k) {
        case IcSpec::Kind::zero: return "zero";
        case IcSpec::Kind::gaussian: return "gaussian";
        case IcSpec::Kind::single_mode: return "single_mode";
        case IcSpec::Kind::random_band_limited: return "random_band_limited";
    }
    return "?";
}

IcSpec::Kind ic_kind_from_name(const std::string& name) {
    if (name == "zero") return IcSpec::Kind::zero;
    if (name == "gaussian") return IcSpec::Kind::gaussian;
    if (name == "single_mode") return IcSpec::Kind::single_mode;
    if (name == "random_band_limited") return IcSpec::Kind::random_band_limited;
    throw std::invalid_argument("unknown ic kind: " + name);
}

int validate_config(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || cfg.dt > 0.1)
        throw std::invalid_argument("config: dt must satisfy 0 < dt <= 0.1");
    if (!(cfg.horizon > 0.0))
        throw std::invalid_argument("config: horizon must be > 0");
    const double steps_real = cfg.horizon / cfg.dt;
    const long long steps = std::llround(steps_real);
    if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) >
                         1e-8 * steps_real)
        throw std::invalid_argument("config: horizon must be a multiple of dt");
    if (cfg.snapshot_every < 0)
        throw std::invalid_argument("config: snapshot_every must be >= 0");
    if (cfg.snapshot_every > 0 && steps % cfg.snapshot_every != 0)
        throw std::invalid_argument(
            "config: snapshot cadence must divide the step count");
    if (!(cfg.tail_threshold > 0.0))
        throw std::invalid_argument("config: tail_threshold must be > 0");
    if (!(cfg.blowup_guard > 0.0))
        throw std::invalid_argument("config: blowup_guard must be > 0");
    return static_cast<int>(steps);
}

Field make_initial_condition(const IcSpec& ic, const GridPtr& grid) {
    switch (ic.kind) {
        case IcSpec::Kind::zero:
            return zero_field(grid);
        case IcSpec::Kind::gaussian:
            if (!(ic.width > 0.0))
                throw std::invalid_argument(
                    "initial condition: gaussian width must be > 0");
            return field_from_function(grid, [&](double x) {
                const double r = (x - ic.center) / ic.width;
                return ic.amplitude * std::exp(-r * r);
            });
        case IcSpec::Kind::single_mode: {
            if (std::abs(ic.mode_k) >= grid->n_points / 2)
                throw std::invalid_argument(
                    "initial condition: mode index |k| must be < n/2");
            const double xi =
                std::numbers::pi * ic.mode_k / grid->half_length;
            return field_from_function(grid, [&](double x) {
                return ic.amplitude * std::sin(xi * x);
            });
        }
        case IcSpec::Kind::random_band_limited: {
            const int n = grid->n_points;
            int cutoff = ic.cutoff > 0 ? ic.cutoff : n / 3;
            cutoff = std::min(cutoff, n / 2 - 1);
            std::mt19937_64 rng(ic.seed);
            Spectrum s;
            s.grid = grid;
            s.coeffs.assign(n, cplx(0.0));
            for (int k = 1; k <= cutoff; ++k) {
                const double re = 2.0 * uniform01(rng) - 1.0;
                const double im = 2.0 * uniform01(rng) - 1.0;
                s.coeffs[k] = cplx(re, im);
                s.coeffs[n - k] = std::conj(s.coeffs[k]);
            }
            Field f = inverse(s);
            const double norm = l2_norm(f);
            if (norm > 0.0) {
                const double scale = ic.amplitude / norm;
                for (double& v : f.values) v *= scale;
            }
            return f;
        }
    }
    return zero_field(grid);
}

Spectrum linear_propagator(const Spectrum& s, double dt) {
    if (dt < 0.0)
        throw std::invalid_argument("linear_propagator: dt must be >= 0");
    const Grid& g = *s.grid;
    std::vector<cplx> L = linear_symbol(g, 0.0);
    Spectrum out = s;
    std::vector<cplx> mult(g.n_points);
    for (int i = 0; i < g.n_points; ++i) mult[i] = std::exp(dt * L[i]);
    kernels::cmul_inplace(out.coeffs.data(), mult.data(), mult.size());
    return out;
}

namespace {

// Per-mode ETDRK4 tables. The phi-function combinations are evaluated as
// means over M points of the unit circle centered at each dt*L_k, which is
// the standard cure for cancellation when |dt*L_k| is small.
struct EtdrkTables {
    std::vector<cplx> E, E2, Q, f1, f2, f3;
};

EtdrkTables make_tables(const std::vector<cplx>& L, double dt) {
    constexpr int M = 32;
    const size_t n = L.size();
    EtdrkTables tb;
    tb.E.resize(n);
    tb.E2.resize(n);
    tb.Q.assign(n, 0.0);
    tb.f1.assign(n, 0.0);
    tb.f2.assign(n, 0.0);
    tb.f3.assign(n, 0.0);
    std::vector<cplx> r(M);
    for (int m = 0; m < M; ++m)
        r[m] = std::exp(cplx(0.0, 2.0 * std::numbers::pi * (m + 0.5) / M));
    for (size_t i = 0; i < n; ++i) {
        const cplx hL = dt * L[i];
        tb.E[i] = std::exp(hL);
        tb.E2[i] = std::exp(0.5 * hL);
        cplx q = 0.0, a = 0.0, b = 0.0, c = 0.0;
        for (int m = 0; m < M; ++m) {
            const cplx z = hL + r[m];
            const cplx ez = std::exp(z);
            const cplx z2 = z * z, z3 = z2 * z;
            q += (std::exp(0.5 * z) - 1.0) / z;
            a += (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
            b += (2.0 + z + ez * (-2.0 + z)) / z3;
            c += (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
        }
        const double w = dt / M;
        tb.Q[i] = w * q;
        tb.f1[i] = w * a;
        tb.f2[i] = w * b;
        tb.f3[i] = w * c;
    }
    return tb;
}

// Shared state for one configured run: grid, damping, nonlinearity, tables,
// and scratch buffers for the nonlinear evaluations.
struct Stepper {
    GridPtr grid;
    NonlinearitySpec nonlinearity;
    DampingProfile damping;
    bool damping_folded = false;
    double dt = 0.0;
    EtdrkTables tb;

    std::vector<cplx> phys, work;
    std::vector<double> u_phys, a_of_u, bu;
    std::vector<char> dealias_mask;
    std::vector<cplx> deriv_mult;  // -i*zeta_k, Nyquist zeroed
    std::vector<cplx> nv, sa, na, sb, nb, sc, nc;  // stage scratch
    std::vector<double> w_l2, w_grad, w_h1, w_h3;  // ledger weight tables

    Stepper(const SimConfig& cfg, double dt_) {
        grid = make_grid(cfg.half_length, cfg.n_points);
        nonlinearity = cfg.nonlinearity;
        damping = make_damping(cfg.damping_kind, cfg.damping_params, grid);
        damping_folded = cfg.damping_kind == DampingKind::constant;
        dt = dt_;
        const double folded = damping_folded ? damping.lambda0 : 0.0;
        tb = make_tables(linear_symbol(*grid, folded), dt);

        const int n = grid->n_points;
        phys.resize(n);
        work.resize(n);
        u_phys.resize(n);
        a_of_u.resize(n);
        bu.resize(n);
        dealias_mask.resize(n);
        deriv_mult.resize(n);
        for (auto* v : {&nv, &sa, &na, &sb, &nb, &sc, &nc}) v->resize(n);
        w_l2.resize(n);
        w_grad.resize(n);
        w_h1.resize(n);
        w_h3.resize(n);
        const int nyq = grid->nyquist_index();
        const double parseval = 2.0 * grid->half_length;
        for (int i = 0; i < n; ++i) {
            const int k = grid->mode_index(i);
            dealias_mask[i] = 3 * std::abs(k) <= n;
            const double xi = grid->wavenumbers[i];
            const double zeta = i == nyq ? 0.0 : xi;
            deriv_mult[i] = cplx(0.0, -zeta);
            w_l2[i] = parseval;
            w_grad[i] = i == nyq ? 0.0 : parseval * xi * xi;
            const double m = 1.0 + xi * xi;
            w_h1[i] = parseval * m;
            w_h3[i] = parseval * m * m * m;
        }
    }

    // out = transform of N(u) where u is given spectrally.
    // N(u) = -d/dx dealias(A(u)) [- b*u when not folded].
    void nonlinear(const std::vector<cplx>& u_hat, std::vector<cplx>& out) {
        const size_t n = u_hat.size();
        fft::backward(u_hat.data(), phys.data(), n);
        for (size_t j = 0; j < n; ++j) u_phys[j] = phys[j].real();
        if (nonlinearity.form == NonlinearityForm::identity) {
            kernels::square_half(a_of_u.data(), u_phys.data(), n);
        } else if (nonlinearity.form == NonlinearityForm::none) {
            std::fill(a_of_u.begin(), a_of_u.end(), 0.0);
        } else {
            for (size_t j = 0; j < n; ++j)
                a_of_u[j] = A_primitive(nonlinearity, u_phys[j]);
        }
        const bool damp = !damping_folded && damping.kind != DampingKind::zero;
        if (damp)
            kernels::mul(bu.data(), damping.samples.values.data(),
                         u_phys.data(), n);
        for (size_t j = 0; j < n; ++j) phys[j] = cplx(a_of_u[j], 0.0);
        fft::forward(phys.data(), out.data(), n);
        for (size_t j = 0; j < n; ++j)
            out[j] = dealias_mask[j] ? out[j] * deriv_mult[j] : cplx(0.0);
        if (damp) {
            for (size_t j = 0; j < n; ++j) phys[j] = cplx(bu[j], 0.0);
            fft::forward(phys.data(), work.data(), n);
            for (size_t j = 0; j < n; ++j) out[j] -= work[j];
        }
    }

    // One ETDRK4 step in place.
    void step(std::vector<cplx>& v) {
        const size_t n = v.size();
        nonlinear(v, nv);
        for (size_t i = 0; i < n; ++i) sa[i] = tb.E2[i] * v[i];
        kernels::cmul_add(sa.data(), tb.Q.data(), nv.data(), n);
        nonlinear(sa, na);
        for (size_t i = 0; i < n; ++i) sb[i] = tb.E2[i] * v[i];
        kernels::cmul_add(sb.data(), tb.Q.data(), na.data(), n);
        nonlinear(sb, nb);
        for (size_t i = 0; i < n; ++i) {
            sc[i] = tb.E2[i] * sa[i];
            work[i] = 2.0 * nb[i] - nv[i];
        }
        kernels::cmul_add(sc.data(), tb.Q.data(), work.data(), n);
        nonlinear(sc, nc);
        kernels::cmul_inplace(v.data(), tb.E.data(), n);
        kernels::cmul_add(v.data(), tb.f1.data(), nv.data(), n);
        for (size_t i = 0; i < n; ++i) work[i] = 2.0 * (na[i] + nb[i]);
        kernels::cmul_add(v.data(), tb.f2.data(), work.data(), n);
        kernels::cmul_add(v.data(), tb.f3.data(), nc.data(), n);
    }
};

EnergyLedgerEntry ledger_entry(const Stepper& st, const std::vector<cplx>& u_hat,
                               const std::vector<double>& u_phys, double t) {
    const Grid& g = *st.grid;
    const int n = g.n_points;

    EnergyLedgerEntry e;
    e.t = t;
    e.l2_sq = kernels::weighted_abs2_sum(st.w_l2.data(), u_hat.data(), n);
    e.grad_sq = kernels::weighted_abs2_sum(st.w_grad.data(), u_hat.data(), n);
    e.h1_sq = kernels::weighted_abs2_sum(st.w_h1.data(), u_hat.data(), n);
    e.h3_sq = kernels::weighted_abs2_sum(st.w_h3.data(), u_hat.data(), n);

    double damp = 0.0, total = 0.0, outer = 0.0;
    const double edge = 0.9 * g.half_length;
    for (int j = 0; j < n; ++j) {
        const double u2 = u_phys[j] * u_phys[j];
        damp += st.damping.samples.values[j] * u2;
        total += u2;
        if (std::abs(g.points[j]) >= edge) outer += u2;
    }
    e.damp_quad = g.dx * damp;
    e.tail_fraction = total > 0.0 ? outer / total : 0.0;
    return e;
}

} // namespace

Field etdrk4_step(const Field& u, const SimConfig& cfg, double dt) {
    if (!all_finite(u))
        throw std::invalid_argument("etdrk4_step: non-finite input");
    if (max_abs(u) > cfg.blowup_guard)
        throw std::runtime_error("etdrk4_step: blow-up guard exceeded");
    Stepper st(cfg, dt);
    Spectrum s = transform(u);
    st.step(s.coeffs);
    return inverse(s);
}

Trajectory simulate(const SimConfig& cfg) {
    auto grid = make_grid(cfg.half_length, cfg.n_points);
    return simulate(cfg, make_initial_condition(cfg.ic, grid));
}

Trajectory simulate(const SimConfig& cfg, const Field& u0) {
    const int steps = validate_config(cfg);
    SimConfig run_cfg = cfg;
    if (run_cfg.snapshot_every == 0) {
        int cadence = std::max(1, steps / 100);
        while (steps % cadence != 0) --cadence;
        run_cfg.snapshot_every = cadence;
    }

    Stepper st(run_cfg, run_cfg.dt);
    if (u0.grid->n_points != st.grid->n_points ||
        u0.grid->half_length != st.grid->half_length)
        throw std::invalid_argument("simulate: initial field grid mismatch");

    Trajectory tr;
    tr.config = run_cfg;

    Spectrum s = transform(u0);
    std::vector<cplx>& v = s.coeffs;
    std::vector<double> u_phys = u0.values;

    auto record = [&](int step_index) {
        const double t = step_index * run_cfg.dt;
        tr.ledger.push_back(ledger_entry(st, v, u_phys, t));
        if (tr.ledger.back().tail_fraction > run_cfg.tail_threshold)
            tr.tail_warning = true;
        if (step_index % run_cfg.snapshot_every == 0) {
            Field snap;
            snap.grid = st.grid;
            snap.values = u_phys;
            tr.times.push_back(t);
            tr.snapshots.push_back(std::move(snap));
        }
    };

    record(0);
    for (int k = 1; k <= steps; ++k) {
        st.step(v);
        fft::backward(v.data(), st.phys.data(), v.size());
        double m = 0.0;
        for (size_t j = 0; j < v.size(); ++j) {
            u_phys[j] = st.phys[j].real();
            m = std::max(m, std::abs(u_phys[j]));
        }
        if (!std::isfinite(m) || m > run_cfg.blowup_guard) {
            tr.status = RunStatus::blowup;
            tr.blowup_time = k * run_cfg.dt;
            break;
        }
        record(k);
    }
    return tr;
}

PicardReport picard_solve(const Field& u0, const SimConfig& cfg, double T_loc,
                          int n_iter, int substeps) {
    if (!(T_loc > 0.0))
        throw std::invalid_argument("picard_solve: T_loc must be > 0");
    if (n_iter < 1 || n_iter > 30)
        throw std::invalid_argument("picard_solve: n_iter must be in [1,30]");
    if (substeps < 2)
        throw std::invalid_argument("picard_solve: substeps must be >= 2");

    const GridPtr grid = u0.grid;
    const int n = grid->n_points;
    const int m = substeps;
    const double h = T_loc / m;

    DampingProfile damping =
        make_damping(cfg.damping_kind, cfg.damping_params, grid);
    const bool folded = cfg.damping_kind == DampingKind::constant;
    const double folded_l0 = folded ? damping.lambda0 : 0.0;
    std::vector<cplx> L = linear_symbol(*grid, folded_l0);

    // Propagator powers: prop[d] applies S_b(d*h).
    std::vector<std::vector<cplx>> prop(m + 1, std::vector<cplx>(n));
    for (int d = 0; d <= m; ++d)
        for (int i = 0; i < n; ++i)
            prop[d][i] = std::exp(static_cast<double>(d) * h * L[i]);

    const Spectrum u0_hat = transform(u0);

    const int nyq = grid->nyquist_index();
    std::vector<cplx> deriv_mult(n);
    std::vector<char> mask(n);
    for (int i = 0; i < n; ++i) {
        const int k = grid->mode_index(i);
        mask[i] = 3 * std::abs(k) <= n;
        const double zeta = i == nyq ? 0.0 : grid->wavenumbers[i];
        deriv_mult[i] = cplx(0.0, zeta);
    }

    // F(u) = d/dx dealias(A(u)) [+ b*u when not folded], spectral side.
    auto eval_F = [&](const std::vector<cplx>& u_hat, std::vector<cplx>& out) {
        std::vector<cplx> phys(n);
        fft::backward(u_hat.data(), phys.data(), n);
        std::vector<cplx> tmp(n);
        for (int j = 0; j < n; ++j)
            tmp[j] = cplx(A_primitive(cfg.nonlinearity, phys[j].real()), 0.0);
        fft::forward(tmp.data(), out.data(), n);
        for (int i = 0; i < n; ++i)
            out[i] = mask[i] ? out[i] * deriv_mult[i] : cplx(0.0);
        if (!folded && cfg.damping_kind != DampingKind::zero) {
            for (int j = 0; j < n; ++j)
                tmp[j] = cplx(damping.samples.values[j] * phys[j].real(), 0.0);
            std::vector<cplx> bt(n);
            fft::forward(tmp.data(), bt.data(), n);
            for (int i = 0; i < n; ++i) out[i] += bt[i];
        }
    };

    // B_{0,T}-style norm of a node-sampled difference: max-in-time L2 plus
    // the L2-in-time H1 seminorm (trapezoid in time).
    const double parseval = 2.0 * grid->half_length;
    auto slab_norm = [&](const std::vector<std::vector<cplx>>& d) {
        std::vector<double> w0(n, parseval), w1(n);
        for (int i = 0; i < n; ++i) {
            const double xi = grid->wavenumbers[i];
            w1[i] = i == nyq ? 0.0 : parseval * xi * xi;
        }
        double sup = 0.0, h1_acc = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double l2 =
                kernels::weighted_abs2_sum(w0.data(), d[i].data(), n);
            sup = std::max(sup, std::sqrt(l2));
            const double g =
                kernels::weighted_abs2_sum(w1.data(), d[i].data(), n);
            h1_acc += (i == 0 || i == m ? 0.5 : 1.0) * h * g;
        }
        return sup + std::sqrt(h1_acc);
    };

    // Iterate state: spectra at the m+1 time nodes.
    std::vector<std::vector<cplx>> cur(m + 1, std::vector<cplx>(n));
    for (int i = 0; i <= m; ++i) {
        cur[i] = u0_hat.coeffs;
        kernels::cmul_inplace(cur[i].data(), prop[i].data(), n);
    }

    PicardReport rep;
    std::vector<std::vector<cplx>> F(m + 1, std::vector<cplx>(n));
    std::vector<std::vector<cplx>> next(m + 1, std::vector<cplx>(n));
    int consecutive_growth = 0;
    const double u0_norm = l2_norm(u0);

    for (int it = 0; it < n_iter; ++it) {
        for (int i = 0; i <= m; ++i) eval_F(cur[i], F[i]);
        for (int i = 0; i <= m; ++i) {
            next[i] = u0_hat.coeffs;
            kernels::cmul_inplace(next[i].data(), prop[i].data(), n);
            if (i == 0) continue;
            std::vector<cplx> acc(n, cplx(0.0));
            for (int j = 0; j <= i; ++j) {
                const double wj = (j == 0 || j == i ? 0.5 : 1.0) * h;
                std::vector<cplx> term = F[j];
                kernels::cmul_inplace(term.data(), prop[i - j].data(), n);
                for (int q = 0; q < n; ++q) acc[q] += wj * term[q];
            }
            for (int q = 0; q < n; ++q) next[i][q] -= acc[q];
        }

        std::vector<std::vector<cplx>> diff(m + 1, std::vector<cplx>(n));
        for (int i = 0; i <= m; ++i)
            for (int q = 0; q < n; ++q) diff[i][q] = next[i][q] - cur[i][q];
        const double dn = slab_norm(diff);
        rep.sup_norm_diffs.push_back(dn);
        if (rep.sup_norm_diffs.size() >= 2) {
            const double prev = rep.sup_norm_diffs[rep.sup_norm_diffs.size() - 2];
            const double ratio = prev > 0.0 ? dn / prev : 0.0;
            rep.contraction_ratios.push_back(ratio);
            consecutive_growth = ratio > 1.0 ? consecutive_growth + 1 : 0;
            if (consecutive_growth >= 3) rep.diverged = true;
        }

        cur.swap(next);
        Spectrum final_hat;
        final_hat.grid = grid;
        final_hat.coeffs = cur[m];
        rep.iterates.push_back(inverse(final_hat));
        if (dn == 0.0) break;  // exact fixed point, nothing left to iterate
    }

    const double floor = 1e-12 * std::max(1.0, u0_norm);
    const bool settled =
        rep.sup_norm_diffs.empty() || rep.sup_norm_diffs.back() <= floor ||
        (!rep.contraction_ratios.empty() && rep.contraction_ratios.back() < 1.0);
    rep.converged = !rep.diverged && settled;
    return rep;
}

} // namespace gkdvb
