#include "fpairs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpairs/constants.hpp"

namespace fpairs {

namespace detail {
void dft(std::vector<cplx>& v, int sign);
}

SpaceParams SpaceParams::make(double s, double p, double q) {
    if (!(s > 0.0)) throw ParameterError("SpaceParams: s must be positive");
    if (!(p > 1.0) || !(q > 1.0))
        throw ParameterError("SpaceParams: p and q must exceed 1");
    if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw ParameterError("SpaceParams: 1/p + 1/q must equal 1");
    return SpaceParams{s, p, q};
}

double boundary_energy_fraction(const std::vector<cplx>& values) {
    const int n = static_cast<int>(values.size());
    const int edge = n / 10;
    double total = 0.0, outer = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = std::norm(values[k]);
        total += e;
        if (k < edge / 2 || k >= n - edge / 2) outer += e;
    }
    if (total == 0.0) return 0.0;
    return outer / total;
}

std::vector<cplx> forward_samples(const Grid& g, const std::vector<cplx>& space) {
    // fhat_m = dx (-1)^m DFT[(-1)^k f_k]_m  (valid for N divisible by 4)
    std::vector<cplx> v(space);
    for (int k = 1; k < g.size; k += 2) v[k] = -v[k];
    detail::dft(v, -1);
    for (int m = 0; m < g.size; ++m) v[m] *= (m % 2 == 0 ? g.dx : -g.dx);
    return v;
}

std::vector<cplx> inverse_samples(const Grid& g, const std::vector<cplx>& freq) {
    std::vector<cplx> v(freq);
    for (int m = 1; m < g.size; m += 2) v[m] = -v[m];
    detail::dft(v, +1);
    for (int k = 0; k < g.size; ++k) v[k] *= (k % 2 == 0 ? g.dxi : -g.dxi);
    return v;
}

GridFunction fourier_transform(const GridFunction& f, double alias_tol) {
    const auto& sp = f.space();
    const double frac = boundary_energy_fraction(sp);
    if (frac > alias_tol)
        throw AliasingError("fourier_transform: boundary energy fraction " +
                            std::to_string(frac) + " exceeds tolerance; grid too small");
    GridFunction out;
    out.grid_ = f.grid();
    out.space_ = sp;
    out.freq_ = forward_samples(f.grid(), sp);
    out.consistent_ = true;
    return out;
}

GridFunction inverse_transform(const GridFunction& f, double alias_tol) {
    const auto& fr = f.freq();
    const double frac = boundary_energy_fraction(fr);
    if (frac > alias_tol)
        throw AliasingError("inverse_transform: boundary energy fraction " +
                            std::to_string(frac) + " exceeds tolerance; grid too small");
    GridFunction out;
    out.grid_ = f.grid();
    out.freq_ = fr;
    out.space_ = inverse_samples(f.grid(), fr);
    out.consistent_ = true;
    return out;
}

std::vector<GridFunction> hermite_basis(int n_max, const Grid& g, double alias_tol) {
    if (n_max < 0) throw ParameterError("hermite_basis: n_max must be >= 0");
    const auto xs = g.x_points();
    std::vector<std::vector<cplx>> h(n_max + 1);

    auto renorm = [&](std::vector<cplx>& v) {
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        s = std::sqrt(s * g.dx);
        for (auto& z : v) z /= s;
    };

    h[0].resize(g.size);
    for (int k = 0; k < g.size; ++k)
        h[0][k] = std::pow(2.0, 0.25) * std::exp(-constants::pi * xs[k] * xs[k]);
    renorm(h[0]);
    if (n_max >= 1) {
        h[1].resize(g.size);
        for (int k = 0; k < g.size; ++k)
            h[1][k] = 2.0 * std::sqrt(constants::pi) * xs[k] * h[0][k];
        renorm(h[1]);
    }
    for (int n = 1; n < n_max; ++n) {
        h[n + 1].resize(g.size);
        const double c1 = 2.0 * std::sqrt(constants::pi / (n + 1));
        const double c2 = std::sqrt(static_cast<double>(n) / (n + 1));
        for (int k = 0; k < g.size; ++k)
            h[n + 1][k] = c1 * xs[k] * h[n][k] - c2 * h[n - 1][k];
        renorm(h[n + 1]);
    }

    if (boundary_energy_fraction(h[n_max]) > alias_tol)
        throw AliasingError("hermite_basis: grid too small for requested order");

    std::vector<GridFunction> out;
    out.reserve(n_max + 1);
    for (auto& v : h)
        out.push_back(fourier_transform(GridFunction::from_space(g, std::move(v)), alias_tol));
    return out;
}

std::vector<std::vector<double>> hermite_values(int n_max,
                                                const std::vector<double>& points) {
    const std::size_t n_pts = points.size();
    std::vector<std::vector<double>> h(n_max + 1, std::vector<double>(n_pts));
    for (std::size_t k = 0; k < n_pts; ++k)
        h[0][k] = std::pow(2.0, 0.25) * std::exp(-constants::pi * points[k] * points[k]);
    if (n_max >= 1)
        for (std::size_t k = 0; k < n_pts; ++k)
            h[1][k] = 2.0 * std::sqrt(constants::pi) * points[k] * h[0][k];
    for (int n = 1; n < n_max; ++n) {
        const double c1 = 2.0 * std::sqrt(constants::pi / (n + 1));
        const double c2 = std::sqrt(static_cast<double>(n) / (n + 1));
        for (std::size_t k = 0; k < n_pts; ++k)
            h[n + 1][k] = c1 * points[k] * h[n][k] - c2 * h[n - 1][k];
    }
    return h;
}

double sobolev_norm_sq(const GridFunction& f, double t) {
    if (t < 0.0) throw ParameterError("sobolev_norm_sq: t must be >= 0");
    const auto& fr = f.freq();
    const Grid& g = f.grid();
    std::vector<double> terms(g.size);
    for (int m = 0; m < g.size; ++m) {
        const double xi = g.xi(m);
        const double w = 1.0 + std::pow(std::abs(xi), 2.0 * t);
        terms[m] = w * std::norm(fr[m]);
    }
    return pairwise_sum(terms) * g.dxi;
}

double hspq_norm_sq(const GridFunction& f, const SpaceParams& params) {
    const auto& fr = f.freq();
    const auto& sp = f.space();
    const Grid& g = f.grid();
    std::vector<double> terms(g.size);
    for (int m = 0; m < g.size; ++m) {
        const double w = 1.0 + std::pow(std::abs(g.xi(m)), 2.0 * params.p * params.s);
        terms[m] = w * std::norm(fr[m]);
    }
    double total = pairwise_sum(terms) * g.dxi;
    for (int k = 0; k < g.size; ++k) {
        const double w = 1.0 + std::pow(std::abs(g.x(k)), 2.0 * params.q * params.s);
        terms[k] = w * std::norm(sp[k]);
    }
    total += pairwise_sum(terms) * g.dx;
    return total;
}

double l2_norm_sq(const GridFunction& f) {
    const auto& sp = f.space();
    std::vector<double> terms(sp.size());
    for (std::size_t k = 0; k < sp.size(); ++k) terms[k] = std::norm(sp[k]);
    return pairwise_sum(terms) * f.grid().dx;
}

cplx point_eval(const GridFunction& f, double x) {
    const Grid& g = f.grid();
    if (x < -g.half_width || x > g.half_width)
        throw RangeError("point_eval: x outside grid range");
    const auto& fr = f.freq();
    std::vector<cplx> terms(g.size);
    for (int m = 0; m < g.size; ++m) {
        const double phase = 2.0 * constants::pi * g.xi(m) * x;
        terms[m] = fr[m] * cplx(std::cos(phase), std::sin(phase));
    }
    return pairwise_sum(terms) * g.dxi;
}

cplx point_eval_freq(const GridFunction& f, double xi) {
    const Grid& g = f.grid();
    if (xi < -g.xi_half_width || xi > g.xi_half_width)
        throw RangeError("point_eval_freq: xi outside grid range");
    const auto& sp = f.space();
    std::vector<cplx> terms(g.size);
    for (int k = 0; k < g.size; ++k) {
        const double phase = -2.0 * constants::pi * g.x(k) * xi;
        terms[k] = sp[k] * cplx(std::cos(phase), std::sin(phase));
    }
    return pairwise_sum(terms) * g.dx;
}

GsDiagnostic gelfand_shilov_diagnostic(const GridFunction& f, double p, double q, double c) {
    if (!(c > 0.0)) throw ParameterError("gelfand_shilov_diagnostic: c must be positive");
    const Grid& g = f.grid();
    GsDiagnostic out;

    // samples below 1e-14 of the side's own peak are numerical zeros; the
    // exponential weight must not amplify that noise. Divergence is flagged
    // when the weighted integrand peaks at the edge of the resolvable
    // support (the weight wins against the function) or overflows there.
    auto side = [&](const std::vector<cplx>& vals, double expo, bool freq_side,
                    double& integral, bool& diverged) {
        double peak = 0.0;
        for (const auto& z : vals) peak = std::max(peak, std::abs(z));
        const double floor = 1e-14 * peak;
        std::vector<double> terms(g.size, 0.0);
        double max_term = 0.0;
        int max_idx = 0, lo = g.size, hi = -1;
        for (int k = 0; k < g.size; ++k) {
            const double m = std::abs(vals[k]);
            if (m <= floor) continue;
            lo = std::min(lo, k);
            hi = std::max(hi, k);
            const double t = freq_side ? g.xi(k) : g.x(k);
            const double lg = 2.0 * std::log(m) + c * std::pow(std::abs(t), expo);
            const double term = lg > 700.0 ? 1e300 : std::exp(lg);
            if (lg > 700.0) diverged = true;
            terms[k] = term;
            if (term >= max_term) {
                max_term = term;
                max_idx = k;
            }
        }
        integral = pairwise_sum(terms) * (freq_side ? g.dxi : g.dx);
        if (hi >= lo && max_term > 0.0) {
            const int width = hi - lo + 1;
            if (max_idx <= lo + width / 10 || max_idx >= hi - width / 10) diverged = true;
        }
    };

    side(f.space(), p, false, out.space_integral, out.space_diverged);
    side(f.freq(), q, true, out.freq_integral, out.freq_diverged);
    return out;
}

GridFunction spectral_derivative(const GridFunction& f) {
    const auto& fr = f.freq();
    const Grid& g = f.grid();
    std::vector<cplx> dfr(g.size);
    for (int m = 0; m < g.size; ++m)
        dfr[m] = fr[m] * cplx(0.0, 2.0 * constants::pi * g.xi(m));
    std::vector<cplx> dsp = inverse_samples(g, dfr);
    return GridFunction::from_both(g, std::move(dsp), std::move(dfr));
}

} // namespace fpairs
