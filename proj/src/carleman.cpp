#include "gkdvb/carleman.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gkdvb {

CarlemanWeight make_weight(double L, double x0, double epsilon, double T,
                           double M_offset) {
    if (!(L > 0.0)) throw std::invalid_argument("make_weight: L must be > 0");
    if (!(std::abs(x0) > L))
        throw std::invalid_argument(
            "make_weight: |x0| must exceed L (psi_x would vanish inside)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("make_weight: epsilon must lie in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("make_weight: T must be > 0");

    CarlemanWeight w;
    w.L = L;
    w.x0 = x0;
    w.epsilon = epsilon;
    w.T = T;
    w.M = M_offset > 0.0 ? M_offset : (std::abs(x0) + L) * (std::abs(x0) + L) + 1.0;

    // psi is quadratic, so psi_xxx = 0 and the conditions reduce to closed
    // forms; still verified pointwise per the construction contract.
    constexpr int n_check = 1024;
    for (int i = 0; i < n_check; ++i) {
        const double x = -L + 2.0 * L * i / (n_check - 1);
        if (!(w.psi(x) > 0.0))
            throw std::invalid_argument("make_weight: psi must be positive on [-L,L]");
        if (!(std::abs(w.psi_x(x)) > 0.0) || !(CarlemanWeight::psi_xx < 0.0))
            throw std::invalid_argument("make_weight: condition c1 fails");
        const double lhs_c2 = w.psi_x(x) * 0.0;  // psi_xxx = 0
        const double rhs_c2 =
            (1.0 - epsilon) * CarlemanWeight::psi_xx * CarlemanWeight::psi_xx;
        if (!(lhs_c2 < rhs_c2))
            throw std::invalid_argument("make_weight: condition c2 fails");
    }
    return w;
}

double c1_min_abs_psi_x(const CarlemanWeight& w) {
    // |psi_x| = 2|x - x0| is monotone on [-L,L] since |x0| > L.
    return 2.0 * (std::abs(w.x0) - w.L);
}

double c2_margin(const CarlemanWeight& w) {
    return (1.0 - w.epsilon) * CarlemanWeight::psi_xx * CarlemanWeight::psi_xx;
}

CoeffSample carleman_coefficients(const CarlemanWeight& w, double s, double t,
                                  double x) {
    if (!(t > 0.0 && t < w.T))
        throw std::invalid_argument("carleman_coefficients: t outside (0,T)");
    if (!(s > 0.0))
        throw std::invalid_argument("carleman_coefficients: s must be > 0");

    const double th = w.theta(t);
    const double th_t = w.theta_t(t);
    const double ps = w.psi(x);
    const double px = w.psi_x(x);
    const double s2 = s * s, s3 = s2 * s;
    const double th2 = th * th, th3 = th2 * th;

    CoeffSample c;
    // A = s(phi_t - phi_xx + phi_xxx) + 3 s^2 phi_x phi_xx + s^3 phi_x^3
    //     - s^2 phi_x^2, specialized to the quadratic family where
    // phi_xx = -2 theta and phi_xxx = 0.
    c.A = s * (ps * th_t + 2.0 * th) - 6.0 * s2 * px * th2 +
          s3 * px * px * px * th3 - s2 * px * px * th2;
    // B = 3 s phi_xx + 3 s^2 phi_x^2 - 2 s phi_x
    c.B = -6.0 * s * th + 3.0 * s2 * px * px * th2 - 2.0 * s * px * th;
    // C = 3 s phi_x - 1
    c.C = 3.0 * s * px * th - 1.0;
    // F = -3 C_x = -9 s phi_xx = 18 s theta
    c.F = 18.0 * s * th;
    // E = 6 s phi_xt + 6 s phi_4x + 9(1-eps) s^2 phi_xx^2
    //     - 9 s^2 phi_x phi_xxx + 3 s phi_xxx - 2 s phi_xx
    c.E = 6.0 * s * px * th_t + 36.0 * (1.0 - w.epsilon) * s2 * th2 +
          4.0 * s * th;

    // D = -( A_t + A_xxx + (AB)_x + (C_x A)_x ). For the quadratic family,
    // C_x = -6 s theta is independent of x, so (C_x A)_x = C_x A_x.
    const CoeffPartials d = carleman_coefficient_partials(w, s, t, x);
    c.D = -(d.A_t + d.A_xxx + d.A_x * c.B + c.A * d.B_x + d.C_x * d.A_x);
    return c;
}

CoeffPartials carleman_coefficient_partials(const CarlemanWeight& w, double s,
                                            double t, double x) {
    if (!(t > 0.0 && t < w.T))
        throw std::invalid_argument("carleman_coefficient_partials: t outside (0,T)");
    const double th = w.theta(t);
    const double th_t = w.theta_t(t);
    const double th_tt = w.theta_tt(t);
    const double ps = w.psi(x);
    const double px = w.psi_x(x);
    const double s2 = s * s, s3 = s2 * s;
    const double th2 = th * th, th3 = th2 * th;

    CoeffPartials d;
    d.A_t = s * (ps * th_tt + 2.0 * th_t) - 12.0 * s2 * px * th * th_t +
            3.0 * s3 * px * px * px * th2 * th_t -
            2.0 * s2 * px * px * th * th_t;
    d.A_x = s * px * th_t + 12.0 * s2 * th2 - 6.0 * s3 * px * px * th3 +
            4.0 * s2 * px * th2;
    d.A_xxx = -48.0 * s3 * th3;
    d.B_x = 4.0 * s * th - 12.0 * s2 * px * th2;
    d.C_x = -6.0 * s * th;
    d.C_t = 3.0 * s * px * th_t;
    d.C_xxx = 0.0;  // C is affine in x for the quadratic family
    return d;
}

PositivityScan positivity_scan(const CarlemanWeight& w,
                               const std::vector<double>& s_values,
                               int grid_n) {
    if (s_values.empty())
        throw std::invalid_argument("positivity_scan: empty s list");
    for (size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] > 0.0) ||
            (i > 0 && !(s_values[i] > s_values[i - 1])))
            throw std::invalid_argument(
                "positivity_scan: s_values must be positive and ascending");
    }
    if (grid_n < 2)
        throw std::invalid_argument("positivity_scan: grid_n must be >= 2");

    PositivityScan scan;
    const double t_lo = w.T / 20.0, t_hi = 19.0 * w.T / 20.0;
    for (double s : s_values) {
        PositivityRow row;
        row.s = s;
        row.min_d_scaled = std::numeric_limits<double>::infinity();
        row.min_e_scaled = std::numeric_limits<double>::infinity();
        row.min_f_scaled = std::numeric_limits<double>::infinity();
        const double s5 = std::pow(s, 5.0);
        for (int i = 0; i < grid_n; ++i) {
            const double x = -w.L + 2.0 * w.L * i / (grid_n - 1);
            for (int j = 0; j < grid_n; ++j) {
                const double t = t_lo + (t_hi - t_lo) * j / (grid_n - 1);
                const CoeffSample c = carleman_coefficients(w, s, t, x);
                const double tt = t * (w.T - t);
                const double tt2 = tt * tt;
                row.min_d_scaled =
                    std::min(row.min_d_scaled, c.D * tt2 * tt2 * tt / s5);
                row.min_e_scaled =
                    std::min(row.min_e_scaled, c.E * tt2 / (s * s));
                row.min_f_scaled = std::min(row.min_f_scaled, c.F * tt / s);
            }
        }
        row.all_positive = row.min_d_scaled > 0.0 && row.min_e_scaled > 0.0 &&
                           row.min_f_scaled > 0.0;
        if (row.all_positive && !scan.found) {
            scan.found = true;
            scan.s_star = s;
        }
        scan.rows.push_back(row);
    }
    scan.c1_plateau = scan.rows.back().min_d_scaled;
    scan.c2_plateau = scan.rows.back().min_e_scaled;
    scan.c3_plateau = scan.rows.back().min_f_scaled;
    return scan;
}

const char* carleman_test_fn_name(CarlemanTestFn q) {
    switch (q) {
        case CarlemanTestFn::constant: return "constant";
        case CarlemanTestFn::half_sine: return "half_sine";
        case CarlemanTestFn::parabola: return "parabola";
    }
    return "?";
}

namespace {

// Spatial factor P(x) = (L^2 - x^2)^3 and derivatives.
struct SpatialFactor {
    double P, Px, Pxx, Pxxx;
};

SpatialFactor spatial_factor(double L, double x) {
    const double L2 = L * L;
    const double u = L2 - x * x;
    SpatialFactor f;
    f.P = u * u * u;
    f.Px = -6.0 * x * u * u;
    f.Pxx = -6.0 * u * u + 24.0 * x * x * u;
    f.Pxxx = 72.0 * x * L2 - 120.0 * x * x * x;
    return f;
}

void time_factor(CarlemanTestFn q, double t, double T, double* g, double* gt) {
    switch (q) {
        case CarlemanTestFn::constant:
            *g = 1.0;
            *gt = 0.0;
            return;
        case CarlemanTestFn::half_sine: {
            const double w = std::numbers::pi / T;
            *g = std::sin(w * t);
            *gt = w * std::cos(w * t);
            return;
        }
        case CarlemanTestFn::parabola:
            *g = t * (T - t);
            *gt = T - 2.0 * t;
            return;
    }
}

} // namespace

CarlemanRatio carleman_ratio(CarlemanTestFn q_id, const CarlemanWeight& w,
                             double s, int grid_n, int time_n) {
    if (grid_n < 4 || time_n < 4)
        throw std::invalid_argument("carleman_ratio: need grid_n, time_n >= 4");
    if (!(s > 0.0))
        throw std::invalid_argument("carleman_ratio: s must be > 0");

    const double hx = 2.0 * w.L / grid_n;
    const double ht = w.T / time_n;
    double lhs = 0.0, rhs = 0.0;
    for (int j = 1; j < time_n; ++j) {  // integrand vanishes at t = 0, T
        const double t = j * ht;
        const double th = w.theta(t);
        const double s_th = s * th;
        const double s3th3 = s_th * s_th * s_th;
        const double s5th5 = s3th3 * s_th * s_th;
        double g, gt;
        time_factor(q_id, t, w.T, &g, &gt);
        for (int i = 0; i <= grid_n; ++i) {
            const double x = -w.L + i * hx;
            const double wx = (i == 0 || i == grid_n) ? 0.5 : 1.0;
            const SpatialFactor f = spatial_factor(w.L, x);
            const double weight = std::exp(-2.0 * s * w.psi(x) * th);
            if (weight == 0.0) continue;
            const double q = f.P * g;
            const double qx = f.Px * g;
            const double qxx = f.Pxx * g;
            const double residual = f.P * gt - f.Pxx * g + f.Pxxx * g;
            lhs += wx * (s5th5 * q * q + s3th3 * qx * qx + s_th * qxx * qxx) *
                   weight;
            rhs += wx * residual * residual * weight;
        }
    }
    CarlemanRatio r;
    r.lhs = lhs * hx * ht;
    r.rhs = rhs * hx * ht;
    if (r.rhs == 0.0) {
        if (r.lhs > 0.0)
            throw std::runtime_error(
                "carleman_ratio: residual vanished for a nonzero test function");
        r.ratio = 0.0;
    } else {
        r.ratio = r.lhs / r.rhs;
    }
    return r;
}

} // namespace gkdvb
