#include <algorithm>
#include <cmath>
#include <limits>

#include "fpairs/constants.hpp"
#include "fpairs/nonuniq.hpp"

namespace fpairs {

namespace {

// log E_s(w) = log(1-w) + sum_{m<=s} w^m/m; series branch for small |w|.
cplx log_weier_factor(cplx w, int s) {
    if (std::abs(w) < 0.5) {
        // -(w^{s+1}/(s+1) + w^{s+2}/(s+2) + ...)
        cplx term = std::pow(w, s + 1);
        cplx acc{};
        for (int m = s + 1; m < s + 220; ++m) {
            const cplx inc = term / static_cast<double>(m);
            acc -= inc;
            if (std::abs(inc) < 1e-19 * (1.0 + std::abs(acc))) break;
            term *= w;
        }
        return acc;
    }
    cplx acc = std::log(cplx(1.0, 0.0) - w);
    cplx term = w;
    for (int m = 1; m <= s; ++m) {
        acc += term / static_cast<double>(m);
        term *= w;
    }
    return acc;
}

} // namespace

cplx LevinProduct::tail_term(cplx z) const {
    // ideal-lattice tail beyond the listed radii:
    //   -sum_{m >= genus+1, m != p} [sum_j D_j e^{-i m theta_j} p/(m-p) R_j^{p-m}] z^m / m
    //   + z^p sum_j D_j e^{-i p theta_j} log R_j     (integer p, balanced rays)
    const double p = kp.p;
    const bool p_integer = std::abs(p - std::round(p)) < 1e-12;
    const int p_int = static_cast<int>(std::lround(p));

    cplx acc{};
    for (int m = genus + 1; m < genus + 400; ++m) {
        if (p_integer && m == p_int) {
            cplx c{};
            for (const auto& ray : rays)
                c += ray.density * std::exp(cplx(0.0, -p * ray.theta)) *
                     std::log(ray.tail_start_rp) / p;
            acc += std::pow(z, m) * c;
            continue;
        }
        cplx c{};
        double scale = 0.0;
        for (const auto& ray : rays) {
            const double rpm = std::pow(ray.tail_start_rp, (p - m) / p);
            c += ray.density * std::exp(cplx(0.0, -m * ray.theta)) * p / (m - p) * rpm;
            scale += ray.density * rpm;
        }
        const cplx inc = -std::pow(z, m) * c / static_cast<double>(m);
        acc += inc;
        if (std::abs(std::pow(z, m)) * scale / m < 1e-19 * (1.0 + std::abs(acc)) && m > p + 2)
            break;
    }
    return acc;
}

cplx LevinProduct::correction_at(cplx z) const {
    cplx acc{};
    cplx zp{1.0, 0.0};
    for (const cplx& c : correction) {
        acc += c * zp;
        zp *= z;
    }
    return acc;
}

cplx LevinProduct::log_eval(cplx z) const {
    cplx acc{};
    for (const auto& ray : rays) {
        const cplx unit = std::exp(cplx(0.0, -ray.theta));
        for (double r : ray.radii) acc += log_weier_factor(z * unit / r, genus);
    }
    return acc + tail_term(z) + correction_at(z);
}

cplx LevinProduct::log_eval_excluding(cplx z, std::size_t ray_idx, std::size_t idx) const {
    const auto& ray0 = rays.at(ray_idx);
    const double r0 = ray0.radii.at(idx);
    const cplx zero = r0 * std::exp(cplx(0.0, ray0.theta));
    cplx acc = std::log(-1.0 / zero); // S/(z - zero) carries -1/zero from its factor
    // exponential part of the removed genus-s factor
    cplx term = z / zero;
    for (int m = 1; m <= genus; ++m) {
        acc += term / static_cast<double>(m);
        term *= z / zero;
    }
    for (std::size_t j = 0; j < rays.size(); ++j) {
        const cplx unit = std::exp(cplx(0.0, -rays[j].theta));
        for (std::size_t i = 0; i < rays[j].radii.size(); ++i) {
            if (j == ray_idx && i == idx) continue;
            acc += log_weier_factor(z * unit / rays[j].radii[i], genus);
        }
    }
    return acc + tail_term(z) + correction_at(z);
}

cplx LevinProduct::log_derivative(std::size_t ray_idx, std::size_t idx) const {
    const auto& ray = rays.at(ray_idx);
    const cplx zero = ray.radii.at(idx) * std::exp(cplx(0.0, ray.theta));
    return log_eval_excluding(zero, ray_idx, idx);
}

double LevinProduct::zero_distance(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ray : rays) {
        const cplx unit = std::exp(cplx(0.0, ray.theta));
        for (double r : ray.radii) best = std::min(best, std::abs(z - r * unit));
    }
    return best;
}

std::optional<std::pair<std::size_t, std::size_t>>
LevinProduct::find_zero(double value, double tol) const {
    const double target_theta = value >= 0.0 ? 0.0 : constants::pi;
    for (std::size_t j = 0; j < rays.size(); ++j) {
        if (std::abs(std::remainder(rays[j].theta - target_theta, 2.0 * constants::pi)) > 1e-9)
            continue;
        const auto& r = rays[j].radii;
        auto it = std::lower_bound(r.begin(), r.end(), std::abs(value) - tol);
        if (it != r.end() && std::abs(*it - std::abs(value)) <= tol)
            return std::make_pair(j, static_cast<std::size_t>(it - r.begin()));
    }
    return std::nullopt;
}

NodeSequence ideal_smooth_ray(double density, double p, double R) {
    if (!(density > 0.0)) throw ParameterError("ideal_smooth_ray: density must be positive");
    const long n = static_cast<long>(std::floor(density * std::pow(R, p)));
    std::vector<double> r(n);
    for (long k = 0; k < n; ++k) r[k] = std::pow((k + 0.5) / density, 1.0 / p);
    return NodeSequence::make(std::move(r), std::max(p, 1.0 + 1e-9), R);
}

LevinProduct build_levin_product(const KpFunction& kp,
                                 const std::vector<NodeSequence>& zero_sets, double R,
                                 const LevinBuildOptions& opts) {
    if (zero_sets.size() != kp.jump_angles.size())
        throw ParameterError("build_levin_product: one zero set per jump angle required");
    if (!(R > 1.0)) throw ParameterError("build_levin_product: R must exceed 1");

    LevinProduct prod;
    prod.kp = kp;
    prod.genus = static_cast<int>(std::ceil(kp.p)) - 1;
    prod.truncation_radius = R;

    const double p = kp.p;
    for (std::size_t j = 0; j < zero_sets.size(); ++j) {
        ProductRay ray;
        ray.theta = kp.jump_angles[j];
        ray.density = kp.masses[j] / (2.0 * constants::pi * p);
        for (double r : zero_sets[j].points) {
            if (!(r > 0.0))
                throw ParameterError("build_levin_product: ray radii must be positive");
            if (r <= R) ray.radii.push_back(r);
        }
        if (ray.radii.empty())
            throw KSmoothError("build_levin_product: empty ray at theta = " +
                               std::to_string(ray.theta));
        // counting deviation |n(r) - D r^p| against the mass-derived density
        for (std::size_t i = 0; i < ray.radii.size(); ++i) {
            const double dev =
                std::abs((i + 1.0) - ray.density * std::pow(ray.radii[i], p));
            if (dev > opts.counting_dev_cap)
                throw KSmoothError("build_levin_product: counting deviation " +
                                   std::to_string(dev) + " at r = " +
                                   std::to_string(ray.radii[i]));
        }
        ray.tail_start_rp = ray.radii.size() / ray.density;
        prod.rays.push_back(std::move(ray));
    }

    // disk-separation constant: largest d with disjoint same-ray disks
    prod.d_sep = std::numeric_limits<double>::infinity();
    for (const auto& ray : prod.rays)
        for (std::size_t i = 0; i + 1 < ray.radii.size(); ++i) {
            const double gap = ray.radii[i + 1] - ray.radii[i];
            const double denom = std::pow(1.0 + ray.radii[i], 1.0 - p) +
                                 std::pow(1.0 + ray.radii[i + 1], 1.0 - p);
            prod.d_sep = std::min(prod.d_sep, gap / denom);
        }
    if (!(prod.d_sep > 0.0))
        throw KSmoothError("build_levin_product: zero disk-separation constant");

    const bool p_integer = std::abs(p - std::round(p)) < 1e-12;
    if (p_integer) {
        cplx bal{};
        double scale = 0.0;
        for (const auto& ray : prod.rays) {
            bal += ray.density * std::exp(cplx(0.0, -p * ray.theta));
            scale += ray.density;
        }
        if (std::abs(bal) > 1e-10 * scale)
            throw KSmoothError("build_levin_product: ray densities violate the "
                               "Lindelof balance required at integer p");
    }

    // correction polynomial: least squares of K(z) - Re log S_raw(z) over an
    // annulus against Re(c_d z^d), degree <= floor(p)
    const int deg = static_cast<int>(std::floor(p));
    prod.correction.assign(deg + 1, cplx{});
    std::vector<cplx> samples;
    std::vector<double> devs;
    for (int ir = 0; ir < opts.fit_radii; ++ir) {
        const double r = opts.fit_lo * R +
                         (opts.fit_hi - opts.fit_lo) * R * ir / std::max(1, opts.fit_radii - 1);
        for (const auto& arc : kp.arcs)
            for (double frac : {0.3, 0.7}) {
                const double theta = arc.lo + frac * (arc.hi - arc.lo);
                const cplx z = r * std::exp(cplx(0.0, theta));
                samples.push_back(z);
                devs.push_back(kp.eval(theta) * std::pow(r, p) - prod.log_eval(z).real());
            }
    }
    // unknowns: Re c_0, then (Re c_d, Im c_d) for d >= 1
    const int unknowns = 1 + 2 * deg;
    Eigen::MatrixXd A(samples.size(), unknowns);
    Eigen::VectorXd rhs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        A(i, 0) = 1.0;
        cplx zp = samples[i];
        for (int d = 1; d <= deg; ++d) {
            A(i, 2 * d - 1) = zp.real();
            A(i, 2 * d) = -zp.imag();
            zp *= samples[i];
        }
        rhs(i) = devs[i];
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    prod.correction[0] = cplx(sol(0), 0.0);
    for (int d = 1; d <= deg; ++d) prod.correction[d] = cplx(sol(2 * d - 1), sol(2 * d));
    prod.fit_residual = (A * sol - rhs).cwiseAbs().maxCoeff();
    if (prod.fit_residual > opts.fit_residual_cap * std::log(2.0 + R))
        throw TruncationError("build_levin_product: correction fit residual " +
                              std::to_string(prod.fit_residual) +
                              "; increase R or check the zero sets");
    return prod;
}

LevinBoundsReport verify_levin_bounds(const LevinProduct& prod, double eps, int n_radii,
                                      int n_angles) {
    if (!(eps > 0.0)) throw ParameterError("verify_levin_bounds: eps must be positive");
    LevinBoundsReport rep;
    const double p = prod.kp.p;
    const double R = prod.truncation_radius;

    for (int ir = 0; ir < n_radii; ++ir) {
        const double r = 1.0 + (0.8 * R - 1.0) * ir / std::max(1, n_radii - 1);
        for (int ia = 0; ia < n_angles; ++ia) {
            const double theta = -constants::pi + 2.0 * constants::pi * (ia + 0.41) / n_angles;
            const cplx z = r * std::exp(cplx(0.0, theta));
            const double d = prod.zero_distance(z);
            const double d_exc = prod.d_sep * std::pow(1.0 + r, 1.0 - p);
            if (d < d_exc) continue;
            ++rep.samples;
            const double dev = prod.log_eval(z).real() - prod.k_growth(theta) * std::pow(r, p);
            const double env = std::log(2.0 + r) + std::log(1.0 + 1.0 / d);
            rep.C_fit = std::max(rep.C_fit, std::abs(dev) / env);
            rep.log_C_eps = std::max(rep.log_C_eps, dev - eps * std::pow(r, p));
            if (dev > constants::levin_scan_C_cap * std::log(2.0 + r) +
                          constants::levin_scan_A_cap) {
                ++rep.violations_upper;
                rep.worst.push_back({r, theta, dev});
            }
            if (dev < -(constants::levin_scan_C_cap * env + constants::levin_scan_A_cap)) {
                ++rep.violations_lower;
                rep.worst.push_back({r, theta, dev});
            }
        }
    }

    for (std::size_t j = 0; j < prod.rays.size(); ++j) {
        const auto& ray = prod.rays[j];
        for (std::size_t i = 0; i < ray.radii.size(); ++i) {
            const double r = ray.radii[i];
            if (r > 0.8 * R) break;
            const double val = prod.log_derivative(j, i).real() -
                               (prod.k_growth(ray.theta) - 2.0 * eps) * std::pow(r, p);
            rep.log_c_eps = std::min(rep.log_c_eps, val);
            const double d_disk = prod.d_sep * std::pow(1.0 + r, 1.0 - p);
            const double env = std::log(2.0 + r) + std::log(1.0 + 1.0 / d_disk);
            if (val < -(constants::levin_scan_C_cap * env + constants::levin_scan_A_cap))
                ++rep.violations_deriv;
        }
        // off-ray growth indicator, top radii
        double ind = -std::numeric_limits<double>::infinity();
        for (double r : {0.72 * R, 0.76 * R, 0.8 * R}) {
            const cplx z = r * std::exp(cplx(0.0, ray.theta + 0.02));
            ind = std::max(ind, prod.log_eval(z).real() / std::pow(r, p));
        }
        rep.indicator.push_back(ind);
    }
    return rep;
}

double truncation_shift(const LevinProduct& a, const LevinProduct& b, double radius,
                        int n_radii, int n_angles) {
    double worst = 0.0;
    for (int ir = 0; ir < n_radii; ++ir) {
        const double r = 1.0 + (radius - 1.0) * ir / std::max(1, n_radii - 1);
        for (int ia = 0; ia < n_angles; ++ia) {
            const double theta = -constants::pi + 2.0 * constants::pi * (ia + 0.37) / n_angles;
            const cplx z = r * std::exp(cplx(0.0, theta));
            const double p = a.kp.p;
            const double d_exc = std::max(a.d_sep, b.d_sep) * std::pow(1.0 + r, 1.0 - p);
            if (a.zero_distance(z) < d_exc || b.zero_distance(z) < d_exc) continue;
            worst = std::max(worst, std::abs(a.log_eval(z).real() - b.log_eval(z).real()));
        }
    }
    return worst;
}

} // namespace fpairs
