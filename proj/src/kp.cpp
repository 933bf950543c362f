#include <algorithm>
#include <cmath>

#include "fpairs/constants.hpp"
#include "fpairs/nonuniq.hpp"

namespace fpairs {

double KpFunction::constantspi() { return constants::pi; }

namespace {

// fold theta into the fundamental pattern of the base function k_{p'}:
// v = 2^n theta reduced mod 2pi into [-pi, pi], then w = |v| reflected at pi/2.
double fold_angle(double theta, int doubling) {
    double v = std::ldexp(theta, doubling); // theta * 2^n
    v = std::remainder(v, 2.0 * constants::pi);
    double w = std::abs(v);
    if (w > constants::pi / 2.0) w = constants::pi - w;
    return w;
}

} // namespace

double KpFunction::eval(double theta) const {
    const double pprime = std::ldexp(p, -doubling);
    const double w = fold_angle(theta, doubling);
    return alpha * std::sin(pprime * w) - beta * std::cos(pprime * w);
}

double KpFunction::deriv_plus(double theta) const {
    for (const Arc& arc : arcs) {
        const double lo = arc.lo, hi = arc.hi;
        if (theta >= lo - 1e-14 && theta < hi - 1e-14)
            return p * (-arc.a_cos * std::sin(p * theta) + arc.b_sin * std::cos(p * theta));
    }
    // wrap: theta at or past the last jump angle
    const Arc& arc = arcs.front();
    return p * (-arc.a_cos * std::sin(p * theta) + arc.b_sin * std::cos(p * theta));
}

double KpFunction::deriv_minus(double theta) const {
    for (auto it = arcs.rbegin(); it != arcs.rend(); ++it)
        if (theta > it->lo + 1e-14 && theta <= it->hi + 1e-14)
            return p * (-it->a_cos * std::sin(p * theta) + it->b_sin * std::cos(p * theta));
    const Arc& arc = arcs.back();
    return p * (-arc.a_cos * std::sin(p * theta) + arc.b_sin * std::cos(p * theta));
}

double KpFunction::lindelof_residual() const {
    cplx s{};
    for (std::size_t j = 0; j < jump_angles.size(); ++j)
        s += masses[j] * std::exp(cplx(0.0, -p * jump_angles[j]));
    return std::abs(s);
}

KpFunction build_kp(double p, double sigma, double b, double s) {
    if (!(p > 1.0)) throw ParameterError("build_kp: p must exceed 1");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw ParameterError("build_kp: sigma must lie in (0,1)");
    if (!(b > 0.0)) throw ParameterError("build_kp: b must be positive");
    const double q = p / (p - 1.0);
    if (s < 0.0) s = 0.5 * (std::pow(sigma, q) + 1.0);
    if (!(s > std::pow(sigma, q) && s < 1.0))
        throw ParameterError("build_kp: s must lie in (sigma^q, 1)");

    KpFunction k;
    k.p = p;
    k.sigma = sigma;
    k.s_claim = s;
    k.b = b;
    k.alpha = 2.0 * constants::pi * sigma / p;
    k.beta = 2.0 * constants::pi * s * std::pow(b, -q) / q;

    double pprime = p;
    while (pprime > 2.0) {
        pprime /= 2.0;
        ++k.doubling;
    }
    if (pprime < 2.0) {
        const double limit = k.alpha * std::abs(std::cos(constants::pi * pprime / 2.0) /
                                                std::sin(constants::pi * pprime / 2.0));
        if (!(k.beta < limit))
            throw ParameterError("build_kp: beta must stay below alpha |cot(pi p'/2)|");
    }

    // jump angles: multiples of pi / (2 * 2^n) in (-pi, pi]
    const int n_jumps = 4 << k.doubling;
    const double step = 2.0 * constants::pi / n_jumps;
    const double mass_axis = 2.0 * k.alpha * p;
    const double mass_diag =
        2.0 * p * (k.alpha * std::abs(std::cos(constants::pi * pprime / 2.0)) -
                   k.beta * std::sin(constants::pi * pprime / 2.0));
    for (int j = 0; j < n_jumps; ++j) {
        const double theta = -constants::pi + step * (j + 1);
        k.jump_angles.push_back(theta);
        // 2^n theta = k pi/2: even multiples carry the axis mass
        const long mult = std::lround(std::ldexp(theta, k.doubling) / (constants::pi / 2.0));
        k.masses.push_back((mult % 2 == 0) ? mass_axis : mass_diag);
    }
    for (double m : k.masses)
        if (!(m > 0.0)) throw ConstructionError("build_kp: non-positive jump mass");

    // per-arc trigonometric coefficients from two interior samples
    for (int j = 0; j < n_jumps; ++j) {
        KpFunction::Arc arc;
        arc.lo = (j == 0) ? -constants::pi : k.jump_angles[j - 1];
        arc.hi = k.jump_angles[j];
        const double t1 = arc.lo + (arc.hi - arc.lo) / 3.0;
        const double t2 = arc.lo + 2.0 * (arc.hi - arc.lo) / 3.0;
        const double det = std::cos(p * t1) * std::sin(p * t2) -
                           std::cos(p * t2) * std::sin(p * t1);
        const double v1 = k.eval(t1), v2 = k.eval(t2);
        arc.a_cos = (v1 * std::sin(p * t2) - v2 * std::sin(p * t1)) / det;
        arc.b_sin = (v2 * std::cos(p * t1) - v1 * std::cos(p * t2)) / det;
        k.arcs.push_back(arc);
    }

    // continuity across every jump (the wrap-around arc lives at th - 2 pi)
    for (std::size_t j = 0; j < k.jump_angles.size(); ++j) {
        const double th = k.jump_angles[j];
        const bool wrap = j + 1 == k.arcs.size();
        const auto& left = k.arcs[j];
        const auto& right = k.arcs[wrap ? 0 : j + 1];
        const double thr = wrap ? th - 2.0 * constants::pi : th;
        const double vl = left.a_cos * std::cos(p * th) + left.b_sin * std::sin(p * th);
        const double vr = right.a_cos * std::cos(p * thr) + right.b_sin * std::sin(p * thr);
        if (std::abs(vl - vr) > 1e-10 * (1.0 + std::abs(vl)))
            throw ConstructionError("build_kp: arc mismatch at a jump angle");
    }

    const bool p_integer = std::abs(p - std::round(p)) < 1e-12;
    if (p_integer && k.lindelof_residual() > 1e-10 * mass_axis * n_jumps)
        throw ConstructionError("build_kp: Lindelof balance violated for integer p");
    return k;
}

double kp_claim_margin(const KpFunction& kp, double b, int n_angles) {
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n_angles; ++i) {
        const double theta = constants::pi / 2.0 * i / n_angles;
        const double rhs = 2.0 * constants::pi * std::pow(b, kp.p) / kp.p *
                           std::pow(std::sin(theta), kp.p);
        margin = std::min(margin, rhs - kp.eval(theta));
    }
    return margin;
}

double find_b0(double p, double sigma, double s, int n_angles) {
    // beta(b) can violate the cot constraint for small b at p' < 2;
    // treat that as an inadmissible margin
    auto margin = [&](double b) {
        try {
            return kp_claim_margin(build_kp(p, sigma, b, s), b, n_angles);
        } catch (const ParameterError&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    double hi = 1.0;
    int guard = 0;
    while (margin(hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 40) throw ConstructionError("find_b0: no admissible b found");
    }
    double lo = hi / 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (margin(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

} // namespace fpairs
