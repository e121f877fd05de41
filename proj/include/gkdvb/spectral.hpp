#pragma once

// Periodic spatial discretization of a truncated line, Fourier transforms,
// spectral differentiation, dealiasing and Sobolev-norm quadrature.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace gkdvb {

// Periodic grid on [-half_length, half_length) with n_points samples.
// wavenumbers are stored in spectral storage order, pairing index-for-index
// with Spectrum::coeffs: k = 0, 1, ..., n/2-1, -n/2, ..., -1, scaled by
// pi / half_length. The single Nyquist entry sits at index n/2.
struct Grid {
    double half_length = 0.0;
    int n_points = 0;
    double dx = 0.0;
    std::vector<double> wavenumbers;
    std::vector<double> points;  // x_j = -half_length + j*dx

    int nyquist_index() const { return n_points / 2; }
    // Signed integer mode index for storage slot i (0..n/2-1, -n/2..-1).
    int mode_index(int i) const {
        return i < n_points / 2 ? i : i - n_points;
    }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double half_length, int n_points);

// Real-valued grid function.
struct Field {
    GridPtr grid;
    std::vector<double> values;
};

// Discrete Fourier coefficients of a grid function, storage order as above.
struct Spectrum {
    GridPtr grid;
    std::vector<std::complex<double>> coeffs;
};

Field zero_field(GridPtr grid);
Field field_from_function(GridPtr grid,
                          const std::function<double(double)>& f);

Spectrum transform(const Field& f);
Field inverse(const Spectrum& s);

// Multiply by (i*xi_k)^order, 0 <= order <= 4. Odd orders zero the Nyquist
// coefficient (its sign is not well defined); even orders keep it.
Spectrum spectral_derivative(const Spectrum& s, int order);

// Two-thirds rule: zero every coefficient with 3*|k| > n.
Spectrum dealias(const Spectrum& s);

// ( sum_k (1+xi_k^2)^s |u_k|^2 * 2*half_length )^{1/2}; s=0 matches the
// discrete L2 quadrature norm (dx * sum_j f_j^2)^{1/2} by Parseval.
double sobolev_norm(const Field& f, double s);

// dx * sum_j f_j g_j
double l2_inner(const Field& f, const Field& g);

double l2_norm(const Field& f);
double max_abs(const Field& f);
bool all_finite(const Field& f);

// Fraction of the discrete L2 mass carried by grid points with
// |x| >= 0.9 * half_length; 0 for the zero field.
double tail_fraction(const Field& f);

} // namespace gkdvb
