#pragma once

// The nonlinearity a(.), the damping b(.), the hypothesis checkers for the
// indefinite and localized damping assumptions, and the spatial right-hand
// side N(u) = -d/dx A(u) - b*u consumed by the time integrators.

#include "gkdvb/spectral.hpp"

#include <functional>
#include <string>

namespace gkdvb {

// a(mu) by form: none -> 0, identity -> mu, signed_power -> mu*|mu|^(p-1),
// abs_power -> |mu|^p. a(0) = 0 for all shipped forms.
enum class NonlinearityForm { none, identity, signed_power, abs_power };

struct NonlinearitySpec {
    NonlinearityForm form = NonlinearityForm::identity;
    double p = 1.0;                // growth exponent, >= 1
    double growth_constant = 1.0;  // C in |a(mu)| <= C(1+|mu|^p)
};

const char* form_name(NonlinearityForm f);
NonlinearityForm form_from_name(const std::string& name);

double a_eval(const NonlinearitySpec& spec, double mu);
double a_prime(const NonlinearitySpec& spec, double mu);
// Primitive A(mu) = int_0^mu a(v) dv, closed form, A(0) = 0.
double A_primitive(const NonlinearitySpec& spec, double mu);

// Smallest C for which the form satisfies |a^(j)| <= C(1+|mu|^{p-j}) at every
// checked order (j <= 1 for p < 2, j <= 2 for p >= 2). The power forms need
// C = p resp. p(p-1); identity needs 1.
double min_growth_constant(NonlinearityForm form, double p);

struct GrowthReport {
    bool pass = false;
    double worst_margin = 0.0;  // min over samples of bound - |value|
    double worst_mu = 0.0;
    int worst_order = 0;  // derivative order at which the worst margin occurs
};

// Samples mu on [-range_max, range_max] and checks |a| <= C(1+|mu|^p),
// |a'| <= C(1+|mu|^{p-1}) with a' by central differences, and for p >= 2
// also |a''| <= C(1+|mu|^{p-2}).
GrowthReport check_growth(const NonlinearitySpec& spec, double range_max,
                          int n_samples);
// Same check against an arbitrary callable (test hook for surrogates).
GrowthReport check_growth_fn(const std::function<double(double)>& a, double p,
                             double growth_constant, double range_max,
                             int n_samples);

enum class DampingKind { zero, constant, indefinite, localized };

const char* damping_kind_name(DampingKind k);
DampingKind damping_kind_from_name(const std::string& name);

struct DampingParams {
    double lambda0 = 0.0;
    double bump_amplitude = 0.0;  // indefinite: b = lambda0 - A*exp(-x^2)
    double alpha = 0.0;           // localized: undamped window (alpha, beta)
    double beta = 0.0;
    double width = 0.0;           // localized: C^1 smoothstep transition width
};

struct DampingProfile {
    DampingKind kind = DampingKind::zero;
    double lambda0 = 0.0;
    DampingParams params;
    Field samples;  // b on the grid
    Field lambda1;  // indefinite split b = lambda0 + lambda1 (zero otherwise)
};

DampingProfile make_damping(DampingKind kind, const DampingParams& params,
                            GridPtr grid);

enum class Hypothesis { hyp_b, hyp_a };

struct HypReport {
    Hypothesis hypothesis = Hypothesis::hyp_b;
    bool pass = false;
    double c_p = 0.0;    // hyp_b only
    double lhs = 0.0;    // ||lambda1||_{L^p} quadrature (hyp_b)
    double rhs = 0.0;    // (lambda0/c_p)^{1-1/(2p)} (hyp_b)
    double margin = 0.0; // rhs - lhs, or min outside (alpha,beta) of b - lambda0
};

// c_p = (1 - 1/(2p)) * (2/p)^{1/(2p-1)}
double c_p_constant(double p);

// Indefinite-damping smallness test: ||lambda1||_{L^p} < (lambda0/c_p)^{1-1/(2p)}.
// Requires an explicit lambda0/lambda1 split (kinds constant, indefinite).
HypReport check_hyp_b(const DampingProfile& d, double p);

// Localized-damping test: b >= 0 everywhere and b >= lambda0 > 0 at every
// grid point outside (alpha, beta).
HypReport check_hyp_a(const DampingProfile& d);

// N(u) = -d/dx dealias(A(u)) - b.*u, flux form applied pointwise in physical
// space, dealiased and differentiated spectrally.
Field rhs_nonlinear(const Field& u, const NonlinearitySpec& spec,
                    const DampingProfile& d);

} // namespace gkdvb
