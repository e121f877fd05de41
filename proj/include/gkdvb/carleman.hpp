#pragma once

// Carleman machinery for the operator d/dt - d^2/dx^2 + d^3/dx^3 on
// (-L,L) x (0,T): quadratic weights psi = M - (x-x0)^2 with |x0| > L, the
// conjugated-operator coefficients A..F in closed form, positivity scans of
// D, E, F, and an empirical test of the weighted inequality on admissible
// test functions.

#include <string>
#include <vector>

namespace gkdvb {

struct CarlemanWeight {
    double L = 1.0;        // spatial half-interval
    double x0 = 2.0;       // parabola center, |x0| > L
    double M = 0.0;        // offset, psi = M - (x-x0)^2 > 0 on [-L,L]
    double epsilon = 0.5;  // Young-inequality split in E
    double T = 2.0;        // time horizon of the weight

    double psi(double x) const { return M - (x - x0) * (x - x0); }
    double psi_x(double x) const { return -2.0 * (x - x0); }
    static constexpr double psi_xx = -2.0;  // psi_xxx and above vanish

    // theta(t) = 1/(t(T-t)); phi(t,x) = psi(x)*theta(t)
    double theta(double t) const { return 1.0 / (t * (T - t)); }
    double theta_t(double t) const {
        const double th = theta(t);
        return (2.0 * t - T) * th * th;
    }
    double theta_tt(double t) const {
        const double th = theta(t);
        const double d = 2.0 * t - T;
        return 2.0 * th * th + 2.0 * d * d * th * th * th;
    }
};

// M defaults to (|x0|+L)^2 + 1. Verifies positivity of psi, condition c1
// (|psi_x| > 0, psi_xx < 0) and condition c2
// (psi_x psi_xxx < (1-eps) psi_xx^2) on a 1024-point grid over [-L,L];
// construction is refused if any fails.
CarlemanWeight make_weight(double L, double x0, double epsilon, double T,
                           double M_offset = 0.0);

// Exact margins of the admissibility conditions for a quadratic weight.
double c1_min_abs_psi_x(const CarlemanWeight& w);  // min over [-L,L] of |psi_x|
double c2_margin(const CarlemanWeight& w);         // (1-eps)psi_xx^2 - psi_x psi_xxx

struct CoeffSample {
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
};

// Closed-form coefficients of w = A u + B u_x + C u_xx + u_xxx + u_t and of
// the quadratic form D u^2 + E u_x^2 + F u_xx^2, evaluated at (x, t, s).
// Requires 0 < t < T and s > 0.
CoeffSample carleman_coefficients(const CarlemanWeight& w, double s, double t,
                                  double x);

// The hand-derived partial derivatives entering D and E; exposed so they can
// be cross-checked against finite differences of A, B, C.
struct CoeffPartials {
    double A_t = 0, A_x = 0, A_xxx = 0;
    double B_x = 0;
    double C_x = 0, C_t = 0, C_xxx = 0;
};

CoeffPartials carleman_coefficient_partials(const CarlemanWeight& w, double s,
                                            double t, double x);

struct PositivityRow {
    double s = 0.0;
    double min_d_scaled = 0.0;  // min over (x,t) of D * t^5(T-t)^5 / s^5
    double min_e_scaled = 0.0;  // min of E * t^2(T-t)^2 / s^2
    double min_f_scaled = 0.0;  // min of F * t(T-t) / s
    bool all_positive = false;
};

struct PositivityScan {
    std::vector<PositivityRow> rows;
    bool found = false;
    double s_star = 0.0;      // smallest sampled s with all three minima > 0
    double c1_plateau = 0.0;  // scaled minima at the largest sampled s
    double c2_plateau = 0.0;
    double c3_plateau = 0.0;
};

// Scans the scaled minima over a grid_n x grid_n product grid covering
// [-L,L] x [T/20, 19T/20]. s_values must be positive and ascending.
PositivityScan positivity_scan(const CarlemanWeight& w,
                               const std::vector<double>& s_values,
                               int grid_n);

// Admissible test functions q(x,t) = (L^2-x^2)^3 * g(t); the cubic spatial
// factor makes q, q_x, q_xx vanish at +-L.
enum class CarlemanTestFn { constant = 0, half_sine = 1, parabola = 2 };

const char* carleman_test_fn_name(CarlemanTestFn q);

struct CarlemanRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

// Tensor-product trapezoid evaluation of both sides of the weighted
// inequality; the integrand is defined as 0 at t in {0, T} where the weight
// vanishes to all orders. grid_n / time_n are panel counts.
CarlemanRatio carleman_ratio(CarlemanTestFn q_id, const CarlemanWeight& w,
                             double s, int grid_n, int time_n);

} // namespace gkdvb
