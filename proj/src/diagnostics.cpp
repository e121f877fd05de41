#include "gkdvb/diagnostics.hpp"

#include "gkdvb/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gkdvb {

double energy(const Field& f) { return 0.5 * l2_inner(f, f); }

std::vector<double> dissipation_residual(const Trajectory& tr) {
    const auto& led = tr.ledger;
    std::vector<double> res(led.size(), 0.0);
    if (led.empty()) return res;
    const double e0 = led[0].l2_sq;
    if (e0 <= 0.0) return res;
    double int_grad = 0.0, int_damp = 0.0;
    for (size_t i = 1; i < led.size(); ++i) {
        const double h = led[i].t - led[i - 1].t;
        int_grad += 0.5 * h * (led[i].grad_sq + led[i - 1].grad_sq);
        int_damp += 0.5 * h * (led[i].damp_quad + led[i - 1].damp_quad);
        res[i] = (led[i].l2_sq + 2.0 * int_grad + 2.0 * int_damp - e0) / e0;
    }
    return res;
}

double weighted_identity_residual(const Trajectory& tr) {
    const auto& led = tr.ledger;
    if (led.size() < 2) return 0.0;
    const double T = led.back().t;
    const double e0 = led[0].l2_sq;
    if (e0 <= 0.0) return 0.0;
    double int_l2 = 0.0, int_w = 0.0;
    for (size_t i = 1; i < led.size(); ++i) {
        const double h = led[i].t - led[i - 1].t;
        int_l2 += 0.5 * h * (led[i].l2_sq + led[i - 1].l2_sq);
        const double fi =
            (T - led[i].t) * (led[i].grad_sq + led[i].damp_quad);
        const double fim = (T - led[i - 1].t) *
                           (led[i - 1].grad_sq + led[i - 1].damp_quad);
        int_w += 0.5 * h * (fi + fim);
    }
    const double lhs = 0.5 * T * e0;
    const double rhs = 0.5 * int_l2 + int_w;
    return (rhs - lhs) / lhs;
}

double observability_ratio(const Trajectory& tr) {
    const auto& led = tr.ledger;
    if (led.empty()) return 0.0;
    const double num = led[0].l2_sq;
    if (num == 0.0) return 0.0;
    double den = 0.0;
    for (size_t i = 1; i < led.size(); ++i) {
        const double h = led[i].t - led[i - 1].t;
        den += 0.5 * h *
               (led[i].grad_sq + led[i].damp_quad + led[i - 1].grad_sq +
                led[i - 1].damp_quad);
    }
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

DecayFit decay_fit(const std::vector<double>& times,
                   const std::vector<double>& norms, double t_start,
                   double t_end) {
    if (times.size() != norms.size())
        throw std::invalid_argument("decay_fit: size mismatch");
    constexpr double floor = 1e-13;
    std::vector<double> ts, ys;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_start || times[i] > t_end) continue;
        if (!(norms[i] > floor)) continue;
        ts.push_back(times[i]);
        ys.push_back(std::log(norms[i]));
    }
    if (ts.size() < 2)
        throw std::invalid_argument(
            "decay_fit: fewer than two usable points in window");

    const double n = static_cast<double>(ts.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (size_t i = 0; i < ts.size(); ++i) {
        const double fit = intercept + slope * ts[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }

    DecayFit f;
    f.rate = -slope;
    f.amplitude = std::exp(intercept);
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    f.t_start = t_start;
    f.t_end = t_end;
    return f;
}

DecayFit fit_trajectory_decay(const Trajectory& tr, double t_start,
                              double t_end) {
    std::vector<double> ts, ns;
    ts.reserve(tr.ledger.size());
    ns.reserve(tr.ledger.size());
    for (const auto& e : tr.ledger) {
        ts.push_back(e.t);
        ns.push_back(std::sqrt(e.l2_sq));
    }
    return decay_fit(ts, ns, t_start, t_end);
}

std::vector<double> sobolev_series(const Trajectory& tr, double s) {
    std::vector<double> out;
    out.reserve(tr.snapshots.size());
    for (const auto& f : tr.snapshots) out.push_back(sobolev_norm(f, s));
    return out;
}

double gn_check(const Field& f) {
    if (tail_fraction(f) >= 1e-3)
        throw std::invalid_argument(
            "gn_check: field is not localized (tail fraction >= 1e-3)");
    const double l2 = l2_norm(f);
    const Field fx = inverse(spectral_derivative(transform(f), 1));
    const double sup = max_abs(f);
    return 2.0 * l2 * l2_norm(fx) - sup * sup;
}

double gn_interp_check(const Field& f, int j, int m) {
    if (j < 0 || m < j || m > 3)
        throw std::invalid_argument("gn_interp_check: need 0 <= j <= m <= 3");
    const double l2 = l2_norm(f);
    if (l2 == 0.0) return 0.0;
    if (j == 0 || j == m) return 1.0;
    const Spectrum s = transform(f);
    const double dj = l2_norm(inverse(spectral_derivative(s, j)));
    const double dm = l2_norm(inverse(spectral_derivative(s, m)));
    if (dm == 0.0) return 0.0;
    const double theta = static_cast<double>(j) / m;
    return dj / (std::pow(dm, theta) * std::pow(l2, 1.0 - theta));
}

LipschitzProbe lipschitz_probe(const SimConfig& cfg, const Field& u0,
                               const Field& v0) {
    Field diff0;
    diff0.grid = u0.grid;
    diff0.values.resize(u0.values.size());
    for (size_t i = 0; i < u0.values.size(); ++i)
        diff0.values[i] = u0.values[i] - v0.values[i];
    const double d0 = l2_norm(diff0);
    LipschitzProbe probe;
    if (d0 == 0.0) return probe;

    const Trajectory tu = simulate(cfg, u0);
    const Trajectory tv = simulate(cfg, v0);
    if (tu.snapshots.size() != tv.snapshots.size())
        throw std::runtime_error("lipschitz_probe: runs diverged in length");

    double sup = 0.0, h1_acc = 0.0;
    const size_t m = tu.snapshots.size();
    for (size_t k = 0; k < m; ++k) {
        Field d;
        d.grid = tu.snapshots[k].grid;
        d.values.resize(tu.snapshots[k].values.size());
        kernels::sub(d.values.data(), tu.snapshots[k].values.data(),
                     tv.snapshots[k].values.data(), d.values.size());
        sup = std::max(sup, l2_norm(d));
        const Field dx = inverse(spectral_derivative(transform(d), 1));
        const double g = l2_inner(dx, dx);
        double w;
        if (m == 1) {
            w = 0.0;
        } else {
            const double h = tu.times[1] - tu.times[0];
            w = (k == 0 || k + 1 == m ? 0.5 : 1.0) * h;
        }
        h1_acc += w * g;
    }
    probe.sup_ratio = sup / d0;
    probe.h1_ratio = std::sqrt(h1_acc) / d0;
    return probe;
}

} // namespace gkdvb
