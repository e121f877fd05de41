#include "gkdvb/dynamics.hpp"

#include "gkdvb/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gkdvb {

const char* form_name(NonlinearityForm f) {
    switch (f) {
        case NonlinearityForm::none: return "none";
        case NonlinearityForm::identity: return "identity";
        case NonlinearityForm::signed_power: return "signed_power";
        case NonlinearityForm::abs_power: return "abs_power";
    }
    return "?";
}

NonlinearityForm form_from_name(const std::string& name) {
    if (name == "none") return NonlinearityForm::none;
    if (name == "identity") return NonlinearityForm::identity;
    if (name == "signed_power") return NonlinearityForm::signed_power;
    if (name == "abs_power") return NonlinearityForm::abs_power;
    throw std::invalid_argument("unknown nonlinearity form: " + name);
}

double a_eval(const NonlinearitySpec& spec, double mu) {
    switch (spec.form) {
        case NonlinearityForm::none: return 0.0;
        case NonlinearityForm::identity: return mu;
        case NonlinearityForm::signed_power:
            return mu * std::pow(std::abs(mu), spec.p - 1.0);
        case NonlinearityForm::abs_power:
            return std::pow(std::abs(mu), spec.p);
    }
    return 0.0;
}

double a_prime(const NonlinearitySpec& spec, double mu) {
    switch (spec.form) {
        case NonlinearityForm::none: return 0.0;
        case NonlinearityForm::identity: return 1.0;
        case NonlinearityForm::signed_power:
            return spec.p * std::pow(std::abs(mu), spec.p - 1.0);
        case NonlinearityForm::abs_power:
            if (mu == 0.0) return 0.0;
            return spec.p * (mu > 0 ? 1.0 : -1.0) *
                   std::pow(std::abs(mu), spec.p - 1.0);
    }
    return 0.0;
}

double A_primitive(const NonlinearitySpec& spec, double mu) {
    const double q = spec.p + 1.0;
    switch (spec.form) {
        case NonlinearityForm::none: return 0.0;
        case NonlinearityForm::identity: return 0.5 * mu * mu;
        case NonlinearityForm::signed_power:
            // integrand is odd, primitive even
            return std::pow(std::abs(mu), q) / q;
        case NonlinearityForm::abs_power:
            // integrand is even, primitive odd
            return (mu >= 0 ? 1.0 : -1.0) * std::pow(std::abs(mu), q) / q;
    }
    return 0.0;
}

double min_growth_constant(NonlinearityForm form, double p) {
    switch (form) {
        case NonlinearityForm::none:
        case NonlinearityForm::identity:
            return 1.0;
        case NonlinearityForm::signed_power:
        case NonlinearityForm::abs_power:
            return p >= 2.0 ? std::max(p, p * (p - 1.0)) : std::max(1.0, p);
    }
    return 1.0;
}

GrowthReport check_growth_fn(const std::function<double(double)>& a, double p,
                             double growth_constant, double range_max,
                             int n_samples) {
    if (!(range_max > 0.0))
        throw std::invalid_argument("check_growth: range_max must be > 0");
    if (n_samples < 3) n_samples = 3;

    GrowthReport rep;
    rep.pass = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const double C = growth_constant;
    for (int i = 0; i < n_samples; ++i) {
        const double mu = -range_max + 2.0 * range_max * i / (n_samples - 1);
        const double h = 1e-6 * std::max(1.0, std::abs(mu));
        const double a0 = a(mu);
        const double d1 = (a(mu + h) - a(mu - h)) / (2.0 * h);
        struct Probe { double value, bound, slack; int order; };
        Probe probes[3];
        int n_probes = 2;
        probes[0] = {std::abs(a0), C * (1.0 + std::pow(std::abs(mu), p)), 0.0,
                     0};
        // Canonical forms attain the derivative bounds with equality, so the
        // difference-quotient probes get a slack covering their rounding.
        probes[1] = {std::abs(d1), C * (1.0 + std::pow(std::abs(mu), p - 1.0)),
                     0.0, 1};
        probes[1].slack = 1e-5 * (1.0 + probes[1].bound);
        if (p >= 2.0) {
            const double h2 = 1e-4 * std::max(1.0, std::abs(mu));
            const double d2 = (a(mu + h2) - 2.0 * a0 + a(mu - h2)) / (h2 * h2);
            probes[2] = {std::abs(d2),
                         C * (1.0 + std::pow(std::abs(mu), p - 2.0)), 0.0, 2};
            probes[2].slack = 1e-5 * (1.0 + probes[2].bound);
            n_probes = 3;
        }
        for (int q = 0; q < n_probes; ++q) {
            const double margin =
                probes[q].bound + probes[q].slack - probes[q].value;
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_mu = mu;
                rep.worst_order = probes[q].order;
            }
        }
    }
    rep.pass = rep.worst_margin >= 0.0;
    return rep;
}

GrowthReport check_growth(const NonlinearitySpec& spec, double range_max,
                          int n_samples) {
    return check_growth_fn([&](double mu) { return a_eval(spec, mu); }, spec.p,
                           spec.growth_constant, range_max, n_samples);
}

const char* damping_kind_name(DampingKind k) {
    switch (k) {
        case DampingKind::zero: return "zero";
        case DampingKind::constant: return "constant";
        case DampingKind::indefinite: return "indefinite";
        case DampingKind::localized: return "localized";
    }
    return "?";
}

DampingKind damping_kind_from_name(const std::string& name) {
    if (name == "zero") return DampingKind::zero;
    if (name == "constant") return DampingKind::constant;
    if (name == "indefinite") return DampingKind::indefinite;
    if (name == "localized") return DampingKind::localized;
    throw std::invalid_argument("unknown damping kind: " + name);
}

namespace {

// C^1 bump equal to 1 on [alpha+w, beta-w], 0 outside (alpha, beta), built
// from the smoothstep 3t^2 - 2t^3 over the transition width w.
double bump(double x, double alpha, double beta, double w) {
    if (x <= alpha || x >= beta) return 0.0;
    if (x >= alpha + w && x <= beta - w) return 1.0;
    const double t = x < alpha + w ? (x - alpha) / w : (beta - x) / w;
    return t * t * (3.0 - 2.0 * t);
}

} // namespace

DampingProfile make_damping(DampingKind kind, const DampingParams& params,
                            GridPtr grid) {
    DampingProfile d;
    d.kind = kind;
    d.lambda0 = params.lambda0;
    d.params = params;
    d.lambda1 = zero_field(grid);

    switch (kind) {
        case DampingKind::zero:
            d.lambda0 = 0.0;
            d.samples = zero_field(grid);
            break;
        case DampingKind::constant:
            if (!(params.lambda0 > 0.0))
                throw std::invalid_argument(
                    "make_damping: constant kind needs lambda0 > 0");
            d.samples = field_from_function(
                grid, [&](double) { return params.lambda0; });
            break;
        case DampingKind::indefinite: {
            if (params.bump_amplitude < 0.0)
                throw std::invalid_argument(
                    "make_damping: bump amplitude must be >= 0");
            if (!(params.lambda0 >= 0.0))
                throw std::invalid_argument(
                    "make_damping: lambda0 must be >= 0");
            const double A = params.bump_amplitude;
            d.lambda1 = field_from_function(
                grid, [&](double x) { return -A * std::exp(-x * x); });
            d.samples = field_from_function(grid, [&](double x) {
                return params.lambda0 - A * std::exp(-x * x);
            });
            break;
        }
        case DampingKind::localized: {
            if (!(params.alpha < params.beta))
                throw std::invalid_argument(
                    "make_damping: localized kind needs alpha < beta");
            if (!(params.width > 0.0) ||
                params.width > 0.5 * (params.beta - params.alpha))
                throw std::invalid_argument(
                    "make_damping: width must satisfy 0 < w <= (beta-alpha)/2");
            if (!(params.lambda0 > 0.0))
                throw std::invalid_argument(
                    "make_damping: localized kind needs lambda0 > 0");
            d.samples = field_from_function(grid, [&](double x) {
                return params.lambda0 *
                       (1.0 - bump(x, params.alpha, params.beta, params.width));
            });
            break;
        }
    }
    if (!all_finite(d.samples))
        throw std::invalid_argument("make_damping: non-finite samples");
    return d;
}

double c_p_constant(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("c_p: p must be >= 1");
    return (1.0 - 1.0 / (2.0 * p)) * std::pow(2.0 / p, 1.0 / (2.0 * p - 1.0));
}

HypReport check_hyp_b(const DampingProfile& d, double p) {
    if (d.kind == DampingKind::localized)
        throw std::invalid_argument(
            "check_hyp_b: localized damping carries no lambda0/lambda1 split");
    HypReport rep;
    rep.hypothesis = Hypothesis::hyp_b;
    rep.c_p = c_p_constant(p);
    const double dx = d.samples.grid->dx;
    double acc = 0.0;
    for (double v : d.lambda1.values) acc += std::pow(std::abs(v), p);
    rep.lhs = std::pow(dx * acc, 1.0 / p);
    rep.rhs = std::pow(d.lambda0 / rep.c_p, 1.0 - 1.0 / (2.0 * p));
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = rep.lhs < rep.rhs;
    return rep;
}

HypReport check_hyp_a(const DampingProfile& d) {
    HypReport rep;
    rep.hypothesis = Hypothesis::hyp_a;
    const Grid& g = *d.samples.grid;
    double min_everywhere = std::numeric_limits<double>::infinity();
    double min_outside = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.n_points; ++j) {
        const double b = d.samples.values[j];
        min_everywhere = std::min(min_everywhere, b);
        const double x = g.points[j];
        if (x <= d.params.alpha || x >= d.params.beta)
            min_outside = std::min(min_outside, b);
    }
    rep.margin = min_outside - d.lambda0;
    rep.pass = d.lambda0 > 0.0 && min_everywhere >= 0.0 && rep.margin >= 0.0;
    return rep;
}

Field rhs_nonlinear(const Field& u, const NonlinearitySpec& spec,
                    const DampingProfile& d) {
    const size_t n = u.values.size();
    Field flux;
    flux.grid = u.grid;
    flux.values.resize(n);
    if (spec.form == NonlinearityForm::identity) {
        kernels::square_half(flux.values.data(), u.values.data(), n);
    } else {
        for (size_t j = 0; j < n; ++j)
            flux.values[j] = A_primitive(spec, u.values[j]);
    }
    Spectrum fs = spectral_derivative(dealias(transform(flux)), 1);
    Field out = inverse(fs);
    if (d.kind == DampingKind::zero) {
        for (size_t j = 0; j < n; ++j) out.values[j] = -out.values[j];
    } else {
        std::vector<double> bu(n);
        kernels::mul(bu.data(), d.samples.values.data(), u.values.data(), n);
        for (size_t j = 0; j < n; ++j) out.values[j] = -out.values[j] - bu[j];
    }
    return out;
}

} // namespace gkdvb
