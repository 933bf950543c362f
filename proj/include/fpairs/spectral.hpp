#pragma once

#include <vector>

#include "fpairs/common.hpp"
#include "fpairs/grid.hpp"

namespace fpairs {

/// Parameters (s, p, q) of the mixed-weight Hilbert space; 1/p + 1/q = 1.
struct SpaceParams {
    double s = 0.5;
    double p = 2.0;
    double q = 2.0;

    static SpaceParams make(double s, double p, double q);
    bool frame_admissible() const { return s * std::min(p, q) >= 1.0 - 1e-12; }
};

/// Fraction of the squared space-side mass in the outer 10% of the grid.
double boundary_energy_fraction(const std::vector<cplx>& values);

/// Forward transform with the e^{-2 pi i xi x} convention; fills the frequency
/// side from space samples. Rejects functions whose boundary energy exceeds
/// alias_tol (the grid is too small for them).
GridFunction fourier_transform(const GridFunction& f, double alias_tol = 1e-8);

/// Inverse transform: fills the space side from frequency samples.
GridFunction inverse_transform(const GridFunction& f, double alias_tol = 1e-8);

/// Raw length-N transforms used internally (dx/dxi scaling and (-1)^k
/// modulation included). Exposed for batch callers.
std::vector<cplx> forward_samples(const Grid& g, const std::vector<cplx>& space);
std::vector<cplx> inverse_samples(const Grid& g, const std::vector<cplx>& freq);

/// L2-normalized Hermite functions h_0..h_n_max in the convention where
/// the transform above acts as hhat_n = (-i)^n h_n. Grid-renormalized
/// three-term recurrence; each returned function carries both sides.
std::vector<GridFunction> hermite_basis(int n_max, const Grid& g, double alias_tol = 1e-8);

/// Hermite function values at arbitrary points (analytic normalization,
/// no grid renormalization); row n holds h_n at the points.
std::vector<std::vector<double>> hermite_values(int n_max,
                                                const std::vector<double>& points);

/// Quadrature of int (1 + |xi|^{2t}) |fhat|^2 dxi (the squared H_t norm).
double sobolev_norm_sq(const GridFunction& f, double t);

/// Squared norm of H_{s,p,q}: int (1+|xi|^{2ps})|fhat|^2 + int (1+|x|^{2qs})|f|^2.
double hspq_norm_sq(const GridFunction& f, const SpaceParams& params);

/// Squared L2 norm from the space side.
double l2_norm_sq(const GridFunction& f);

/// Band-limited evaluation of f at x from the frequency samples.
cplx point_eval(const GridFunction& f, double x);

/// Evaluation of fhat at xi from the space samples (truncated integral).
cplx point_eval_freq(const GridFunction& f, double xi);

struct GsDiagnostic {
    double space_integral = 0.0;
    double freq_integral = 0.0;
    bool space_diverged = false; // weight overflowed against non-negligible mass
    bool freq_diverged = false;
};

/// Grid quadratures of int |f|^2 e^{c|x|^p} dx and int |fhat|^2 e^{c|xi|^q} dxi,
/// restricted to samples above the side's numerical noise floor. Divergence
/// is flagged when the weighted integrand peaks at the edge of the
/// resolvable support or overflows.
GsDiagnostic gelfand_shilov_diagnostic(const GridFunction& f, double p, double q, double c);

/// Spectral derivative: multiply fhat by 2 pi i xi and transform back.
GridFunction spectral_derivative(const GridFunction& f);

} // namespace fpairs
