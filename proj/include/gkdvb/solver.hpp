#pragma once

// Time evolution: exact linear semigroup for u_t + u_xxx - u_xx = 0, a
// fourth-order exponential integrator (ETDRK4, contour-averaged phi
// coefficients) for production runs, and a Picard/Duhamel fixed-point solver
// that mirrors the contraction-mapping construction of the local theory.

#include "gkdvb/dynamics.hpp"
#include "gkdvb/spectral.hpp"

#include <cstdint>
#include <vector>

namespace gkdvb {

struct IcSpec {
    enum class Kind { zero, gaussian, single_mode, random_band_limited };
    Kind kind = Kind::zero;
    double amplitude = 1.0;
    double width = 1.0;   // gaussian
    double center = 0.0;  // gaussian
    int mode_k = 1;       // single_mode
    std::uint64_t seed = 1;  // random_band_limited
    int cutoff = 0;          // random_band_limited; 0 -> n/3
};

const char* ic_kind_name(IcSpec::Kind k);
IcSpec::Kind ic_kind_from_name(const std::string& name);

struct SimConfig {
    double half_length = 32.0;
    int n_points = 512;
    double dt = 1e-3;
    double horizon = 5.0;
    int snapshot_every = 0;  // 0 -> pick ~100 snapshots
    NonlinearitySpec nonlinearity;
    DampingKind damping_kind = DampingKind::zero;
    DampingParams damping_params;
    IcSpec ic;
    double tail_threshold = 1e-6;
    double blowup_guard = 1e6;
};

// Throws std::invalid_argument on violated invariants; returns the step count.
int validate_config(const SimConfig& cfg);

struct EnergyLedgerEntry {
    double t = 0.0;
    double l2_sq = 0.0;      // ||u||_2^2
    double grad_sq = 0.0;    // ||u_x||_2^2
    double damp_quad = 0.0;  // int b u^2 dx
    double tail_fraction = 0.0;
    double h1_sq = 0.0;      // ||u||_{H^1}^2 (ledger CSV extras)
    double h3_sq = 0.0;      // ||u||_{H^3}^2
};

enum class RunStatus { ok, blowup };

struct Trajectory {
    SimConfig config;
    std::vector<double> times;  // snapshot times
    std::vector<Field> snapshots;
    std::vector<EnergyLedgerEntry> ledger;  // one entry per step, t=0 included
    RunStatus status = RunStatus::ok;
    bool tail_warning = false;
    double blowup_time = -1.0;
};

Field make_initial_condition(const IcSpec& ic, const GridPtr& grid);

// Multiplies each mode by exp(dt*(i*zeta_k^3 - xi_k^2)) where zeta equals xi
// except at Nyquist (zeroed, matching the odd-derivative rule).
Spectrum linear_propagator(const Spectrum& s, double dt);

// One ETDRK4 step; builds the coefficient tables on the fly. simulate() keeps
// them cached across steps.
Field etdrk4_step(const Field& u, const SimConfig& cfg, double dt);

Trajectory simulate(const SimConfig& cfg);

// Same run with an explicit initial field (cfg.ic is ignored). The field must
// live on a grid matching cfg's grid parameters.
Trajectory simulate(const SimConfig& cfg, const Field& u0);

struct PicardReport {
    std::vector<Field> iterates;           // value at t = T_loc per iteration
    std::vector<double> sup_norm_diffs;    // B_{0,T}-style norm of successive differences
    std::vector<double> contraction_ratios;
    bool converged = false;
    bool diverged = false;  // ratio > 1 for 3 consecutive iterations
};

// Iterates Gamma(u)(t) = S_b(t) u0 - int_0^t S_b(t-s) F(u(s)) ds on
// `substeps` uniform nodes with the composite trapezoid rule, starting from
// u0_iterate(t) = S_b(t) u0. Constant damping is folded into the semigroup;
// otherwise b*u joins the integrand F.
PicardReport picard_solve(const Field& u0, const SimConfig& cfg, double T_loc,
                          int n_iter, int substeps);

} // namespace gkdvb
