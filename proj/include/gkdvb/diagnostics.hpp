#pragma once

// Quantitative verification layer: energy identities, decay-rate fits,
// observability ratios, Sobolev-norm series, Gagliardo-Nirenberg checks and
// the Lipschitz solution-map probe. Pure post-processing over trajectories.

#include "gkdvb/solver.hpp"

#include <vector>

namespace gkdvb {

// E = 0.5 * ||f||_2^2
double energy(const Field& f);

// Per-ledger-time relative residual of
//   ||u(t)||^2 + 2 int_0^t ||u_x||^2 + 2 int_0^t int b u^2 = ||u0||^2,
// time integrals by trapezoid over the per-step ledger. Zero initial data
// defines the residual as identically 0.
std::vector<double> dissipation_residual(const Trajectory& tr);

// Relative residual of the (T-t)-multiplier identity
//   (T/2)||u0||^2 = 0.5 ||u||_{L2L2}^2 + int (T-t) ||u_x||^2
//                   + int (T-t) int b u^2.
double weighted_identity_residual(const Trajectory& tr);

// ||u0||^2 / ( ||u_x||_{L2L2}^2 + int int b u^2 ); 0 for zero initial data,
// +inf when the denominator vanishes with nonzero numerator.
double observability_ratio(const Trajectory& tr);

struct DecayFit {
    double rate = 0.0;       // eta in ||u(t)|| ~ A exp(-eta t)
    double amplitude = 0.0;  // A
    double r_squared = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
};

// Least-squares fit of log(norm) = log A - eta*t over [t_start, t_end].
// Points with norm below 1e-13 are excluded; throws if fewer than two
// usable points remain.
DecayFit decay_fit(const std::vector<double>& times,
                   const std::vector<double>& norms, double t_start,
                   double t_end);

// decay_fit applied to the trajectory's ledger L2 norms.
DecayFit fit_trajectory_decay(const Trajectory& tr, double t_start,
                              double t_end);

// sobolev_norm(snapshot, s) at every snapshot time.
std::vector<double> sobolev_series(const Trajectory& tr, double s);

// 2 ||f||_2 ||f_x||_2 - ||f||_inf^2, which is >= 0 for functions on the line.
// Requires a localized field (tail fraction < 1e-3); throws otherwise.
double gn_check(const Field& f);

// ||d^j f|| / ( ||d^m f||^{j/m} * ||f||^{1-j/m} ), 0 <= j <= m <= 3.
double gn_interp_check(const Field& f, int j, int m);

struct LipschitzProbe {
    double sup_ratio = 0.0;  // max over snapshots of ||u-v|| / ||u0-v0||
    double h1_ratio = 0.0;   // L2-in-time H1 seminorm analogue
};

LipschitzProbe lipschitz_probe(const SimConfig& cfg, const Field& u0,
                               const Field& v0);

} // namespace gkdvb
