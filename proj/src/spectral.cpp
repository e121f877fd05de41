#include "gkdvb/spectral.hpp"

#include "gkdvb/fft.hpp"
#include "gkdvb/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkdvb {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a.n_points != b.n_points || a.half_length != b.half_length)
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

void require_sized(const Field& f, const char* what) {
    if (!f.grid || f.values.size() != static_cast<size_t>(f.grid->n_points))
        throw std::invalid_argument(std::string(what) +
                                    ": field size does not match grid");
}

void require_sized(const Spectrum& s, const char* what) {
    if (!s.grid || s.coeffs.size() != static_cast<size_t>(s.grid->n_points))
        throw std::invalid_argument(std::string(what) +
                                    ": spectrum size does not match grid");
}

} // namespace

GridPtr make_grid(double half_length, int n_points) {
    if (!std::isfinite(half_length) || half_length <= 0.0)
        throw std::invalid_argument("make_grid: half_length must be finite and > 0");
    if (!is_power_of_two(n_points) || n_points < 16)
        throw std::invalid_argument(
            "make_grid: n_points must be a power of two >= 16");

    auto g = std::make_shared<Grid>();
    g->half_length = half_length;
    g->n_points = n_points;
    g->dx = 2.0 * half_length / n_points;
    g->wavenumbers.resize(n_points);
    g->points.resize(n_points);
    const double k_scale = std::numbers::pi / half_length;
    for (int i = 0; i < n_points; ++i) {
        g->wavenumbers[i] = k_scale * g->mode_index(i);
        g->points[i] = -half_length + i * g->dx;
    }
    return g;
}

Field zero_field(GridPtr grid) {
    Field f;
    f.grid = std::move(grid);
    f.values.assign(f.grid->n_points, 0.0);
    return f;
}

Field field_from_function(GridPtr grid,
                          const std::function<double(double)>& fn) {
    Field f;
    f.grid = std::move(grid);
    f.values.resize(f.grid->n_points);
    for (int j = 0; j < f.grid->n_points; ++j)
        f.values[j] = fn(f.grid->points[j]);
    return f;
}

Spectrum transform(const Field& f) {
    require_sized(f, "transform");
    const size_t n = f.values.size();
    std::vector<std::complex<double>> in(n);
    for (size_t j = 0; j < n; ++j) in[j] = f.values[j];
    Spectrum s;
    s.grid = f.grid;
    s.coeffs.resize(n);
    fft::forward(in.data(), s.coeffs.data(), n);
    return s;
}

Field inverse(const Spectrum& s) {
    require_sized(s, "inverse");
    const size_t n = s.coeffs.size();
    std::vector<std::complex<double>> out(n);
    fft::backward(s.coeffs.data(), out.data(), n);
    Field f;
    f.grid = s.grid;
    f.values.resize(n);
    // Conjugate-symmetric input makes the imaginary parts rounding noise.
    for (size_t j = 0; j < n; ++j) f.values[j] = out[j].real();
    return f;
}

Spectrum spectral_derivative(const Spectrum& s, int order) {
    require_sized(s, "spectral_derivative");
    if (order < 0 || order > 4)
        throw std::invalid_argument("spectral_derivative: order must be in [0,4]");
    Spectrum d = s;
    const int n = s.grid->n_points;
    const int nyq = s.grid->nyquist_index();
    for (int i = 0; i < n; ++i) {
        const std::complex<double> isym(0.0, s.grid->wavenumbers[i]);
        std::complex<double> m(1.0, 0.0);
        for (int o = 0; o < order; ++o) m *= isym;
        d.coeffs[i] *= m;
    }
    if (order % 2 == 1) d.coeffs[nyq] = 0.0;
    return d;
}

Spectrum dealias(const Spectrum& s) {
    require_sized(s, "dealias");
    Spectrum d = s;
    const int n = s.grid->n_points;
    for (int i = 0; i < n; ++i) {
        const int k = s.grid->mode_index(i);
        if (3 * std::abs(k) > n) d.coeffs[i] = 0.0;
    }
    return d;
}

double sobolev_norm(const Field& f, double s) {
    require_sized(f, "sobolev_norm");
    if (!(s >= 0.0 && s <= 4.0))
        throw std::invalid_argument("sobolev_norm: s must be in [0,4]");
    Spectrum sp = transform(f);
    const int n = f.grid->n_points;
    std::vector<double> w(n);
    const double parseval = 2.0 * f.grid->half_length;
    for (int i = 0; i < n; ++i) {
        const double xi = f.grid->wavenumbers[i];
        w[i] = parseval * std::pow(1.0 + xi * xi, s);
    }
    return std::sqrt(kernels::weighted_abs2_sum(w.data(), sp.coeffs.data(),
                                                static_cast<size_t>(n)));
}

double l2_inner(const Field& f, const Field& g) {
    require_sized(f, "l2_inner");
    require_sized(g, "l2_inner");
    require_same_grid(*f.grid, *g.grid, "l2_inner");
    return f.grid->dx *
           kernels::dot(f.values.data(), g.values.data(), f.values.size());
}

double l2_norm(const Field& f) { return std::sqrt(l2_inner(f, f)); }

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const Field& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

double tail_fraction(const Field& f) {
    require_sized(f, "tail_fraction");
    const double edge = 0.9 * f.grid->half_length;
    double total = 0.0, outer = 0.0;
    for (int j = 0; j < f.grid->n_points; ++j) {
        const double m = f.values[j] * f.values[j];
        total += m;
        if (std::abs(f.grid->points[j]) >= edge) outer += m;
    }
    return total > 0.0 ? outer / total : 0.0;
}

} // namespace gkdvb
