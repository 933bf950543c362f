#include <algorithm>
#include <cmath>
#include <limits>

#include "fpairs/constants.hpp"
#include "fpairs/nonuniq.hpp"

namespace fpairs {

namespace {

std::vector<double> axis_points(const Grid& g, FamilySide side) {
    return side == FamilySide::Space ? g.x_points() : g.xi_points();
}

// min over rows of the least-squares decay exponent of log|row| vs |t|^p,
// restricted above rel_floor of the row maximum and |t| >= 1
double min_decay_exponent(const Eigen::MatrixXcd& rows, const std::vector<double>& pts,
                          double p, double rel_floor) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows.rows(); ++i) {
        double mx = 0.0;
        for (int k = 0; k < rows.cols(); ++k) mx = std::max(mx, std::abs(rows(i, k)));
        if (mx == 0.0) continue;
        double su = 0, sv = 0, suu = 0, suv = 0;
        long n = 0;
        for (int k = 0; k < rows.cols(); ++k) {
            const double m = std::abs(rows(i, k));
            if (m <= rel_floor * mx || std::abs(pts[k]) < 1.0) continue;
            const double u = std::pow(std::abs(pts[k]), p);
            const double v = std::log(m);
            su += u; sv += v; suu += u * u; suv += u * v;
            ++n;
        }
        if (n < 8) continue;
        const double det = n * suu - su * su;
        if (det <= 0.0) continue;
        worst = std::min(worst, -(n * suv - su * sv) / det);
    }
    if (!std::isfinite(worst))
        throw InsufficientDataError("family: decay measurement has no usable samples");
    return worst;
}

double certificate_constant(const Eigen::MatrixXcd& rows, const std::vector<double>& pts,
                            double p, double expo, double rel_floor) {
    double c = 1.0;
    for (int i = 0; i < rows.rows(); ++i) {
        double mx = 0.0;
        for (int k = 0; k < rows.cols(); ++k) mx = std::max(mx, std::abs(rows(i, k)));
        for (int k = 0; k < rows.cols(); ++k) {
            const double m = std::abs(rows(i, k));
            if (m <= rel_floor * mx) continue;
            const double lg = std::log(m) + expo * std::pow(std::abs(pts[k]), p);
            if (lg < 650.0) c = std::max(c, std::exp(lg));
        }
    }
    return c;
}

} // namespace

InterpolantFamily build_interpolant_family(const LevinProduct& prod,
                                           const std::vector<double>& nodes,
                                           const Grid& grid, double a, FamilySide side,
                                           double valid_fraction) {
    if (nodes.empty()) throw ParameterError("build_interpolant_family: no nodes");
    if (!(a > 0.0)) throw ParameterError("build_interpolant_family: a must be positive");
    const double p = prod.kp.p;
    const double valid_r = valid_fraction * prod.truncation_radius;

    InterpolantFamily fam;
    fam.side = side;
    fam.grid = grid;
    fam.p = p;
    fam.a = a;
    fam.nodes = nodes;

    const std::vector<double> pts = axis_points(grid, side);
    const int N = grid.size;
    const int n = static_cast<int>(nodes.size());

    // cached log S on the axis
    std::vector<cplx> logS(N);
    for (int k = 0; k < N; ++k)
        logS[k] = std::abs(pts[k]) <= valid_r ? prod.log_eval(cplx(pts[k], 0.0))
                                              : cplx(-1e9, 0.0);

    // real-axis zero moduli for local-gap thresholds (rays at 0 and pi)
    std::vector<double> real_zeros;
    for (const auto& ray : prod.rays) {
        const double c = std::cos(ray.theta);
        if (std::abs(c) < 1.0 - 1e-9) continue;
        for (double r : ray.radii) real_zeros.push_back(c > 0 ? r : -r);
    }
    std::sort(real_zeros.begin(), real_zeros.end());

    fam.primal.resize(n, N);
    fam.dual.resize(n, N);
    std::vector<cplx> row(N);

    for (int i = 0; i < n; ++i) {
        const double node = nodes[i];
        const auto loc = prod.find_zero(node, 1e-9 * (1.0 + std::abs(node)));
        if (!loc)
            throw ParameterError("build_interpolant_family: node " + std::to_string(node) +
                                 " is not a zero of the product");
        const cplx lds = prod.log_derivative(loc->first, loc->second);
        const double scale = a * std::pow(std::abs(node), p);

        auto it = std::lower_bound(real_zeros.begin(), real_zeros.end(), node);
        double gap = std::numeric_limits<double>::infinity();
        if (it != real_zeros.begin()) gap = std::min(gap, node - *(it - 1));
        if (it + 1 != real_zeros.end()) gap = std::min(gap, *(it + 1) - node);
        const double near_thr = 0.45 * gap;

        for (int k = 0; k < N; ++k) {
            if (std::abs(pts[k]) > valid_r) {
                row[k] = cplx{};
                continue;
            }
            cplx lg;
            if (std::abs(pts[k] - node) < near_thr)
                lg = prod.log_eval_excluding(cplx(pts[k], 0.0), loc->first, loc->second) -
                     lds - scale;
            else
                lg = logS[k] - std::log(cplx(pts[k] - node, 0.0)) - lds - scale;
            row[k] = (lg.real() < 320.0 && lg.real() > -745.0)
                         ? std::exp(lg)
                         : (lg.real() <= -745.0 ? cplx{} : cplx(std::nan(""), 0.0));
        }
        for (int k = 0; k < N; ++k) fam.primal(i, k) = row[k];
        const std::vector<cplx> other = side == FamilySide::Space
                                            ? forward_samples(grid, row)
                                            : inverse_samples(grid, row);
        for (int k = 0; k < N; ++k) fam.dual(i, k) = other[k];
    }

    const std::vector<double> dual_pts =
        side == FamilySide::Space ? grid.xi_points() : grid.x_points();
    fam.a_dprime = min_decay_exponent(fam.primal, pts, p, 1e-11);
    fam.a_prime = min_decay_exponent(fam.dual, dual_pts, p == 2.0 ? 2.0 : p / (p - 1.0), 1e-11);
    const double Cs = certificate_constant(fam.primal, pts, p, fam.a_dprime, 1e-12);
    const double Cd = certificate_constant(fam.dual, dual_pts,
                                           p == 2.0 ? 2.0 : p / (p - 1.0), fam.a_prime, 1e-12);
    fam.C = std::max(Cs, Cd);
    fam.ordering_ok = fam.a_prime > a && a > fam.a_dprime && fam.a_dprime > 0.0;

    // cardinal defect: dual-side synthesis back at nearby node positions
    double defect = 0.0;
    const int probe = std::min(n, 6);
    for (int i = 0; i < probe; ++i) {
        for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) {
            cplx v{};
            for (int m = 0; m < N; ++m) {
                const double ph = (side == FamilySide::Space ? 1.0 : -1.0) * 2.0 *
                                  constants::pi * dual_pts[m] * nodes[j];
                v += fam.dual(i, m) * cplx(std::cos(ph), std::sin(ph));
            }
            v *= (side == FamilySide::Space ? grid.dxi : grid.dx);
            v *= std::exp(a * std::pow(std::abs(nodes[i]), p)); // unscale
            const cplx want = (i == j) ? cplx(1.0, 0.0) : cplx{};
            defect = std::max(defect, std::abs(v - want));
        }
    }
    fam.cardinal_defect = defect;
    return fam;
}

double ResidualState::weighted_norm(double a, double p, double q) const {
    double s = 0.0;
    for (int i = 0; i < alpha.size(); ++i)
        s += std::abs(alpha(i)) * std::exp(a * std::pow(std::abs(lambda_nodes[i]), p));
    for (int i = 0; i < beta.size(); ++i)
        s += std::abs(beta(i)) * std::exp(a * std::pow(std::abs(mu_nodes[i]), q));
    return s;
}

namespace detail {

// Tilde-coordinate cross matrix: out[r, c] = e^{a |to[r]|^{p_to}} *
// (value of the c-th scaled source function at to[r]), rows clamped below
// the per-source noise floor. The source functions are sampled on
// `src_axis` and evaluated by the exact Fourier sum with sign `sgn`.
Eigen::MatrixXcd cross_matrix(const Eigen::MatrixXcd& src_primal,
                              const Eigen::MatrixXcd& src_other,
                              const std::vector<double>& src_axis, double axis_step,
                              double sgn, const std::vector<double>& to, double a,
                              double p_to, double clamp_rel) {
    const int N = static_cast<int>(src_axis.size());
    const int nt = static_cast<int>(to.size());
    Eigen::MatrixXcd E(N, nt);
    for (int m = 0; m < N; ++m)
        for (int t = 0; t < nt; ++t) {
            const double ph = sgn * 2.0 * constants::pi * src_axis[m] * to[t];
            E(m, t) = cplx(std::cos(ph), std::sin(ph)) * axis_step;
        }
    Eigen::MatrixXcd V = src_primal * E; // [source, to]
    for (int i = 0; i < V.rows(); ++i) {
        double floor_i = 0.0;
        for (int k = 0; k < src_other.cols(); ++k)
            floor_i = std::max(floor_i, std::abs(src_other(i, k)));
        floor_i *= clamp_rel;
        for (int t = 0; t < nt; ++t)
            if (std::abs(V(i, t)) < floor_i) V(i, t) = cplx{};
    }
    Eigen::MatrixXcd M = V.transpose(); // [to, source]
    for (int t = 0; t < nt; ++t)
        M.row(t) *= std::exp(a * std::pow(std::abs(to[t]), p_to));
    return M;
}

} // namespace detail

SolveResult solve_free_interpolation(const InterpolantFamily& phi,
                                     const InterpolantFamily& psi,
                                     const ResidualState& target, double L, int max_iter,
                                     double tol) {
    if (phi.side != FamilySide::Space || psi.side != FamilySide::Frequency)
        throw ParameterError("solve_free_interpolation: phi must be the space family "
                             "and psi the frequency family");
    const double a = phi.a;
    const double p = phi.p, q = psi.p;

    std::vector<double> lam_sys, mu_sys;
    for (double v : phi.nodes)
        if (std::abs(v) > L) lam_sys.push_back(v);
    for (double v : psi.nodes)
        if (std::abs(v) > L) mu_sys.push_back(v);
    if (lam_sys.empty() || mu_sys.empty())
        throw ConfigError("solve_free_interpolation: no system nodes beyond L");

    auto rows_for = [](const InterpolantFamily& f, const std::vector<double>& keep) {
        Eigen::MatrixXcd P(keep.size(), f.primal.cols()), D(keep.size(), f.dual.cols());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            const auto it = std::find(f.nodes.begin(), f.nodes.end(), keep[i]);
            if (it == f.nodes.end())
                throw ConfigError("solve_free_interpolation: family lacks a system node");
            const int idx = static_cast<int>(it - f.nodes.begin());
            P.row(i) = f.primal.row(idx);
            D.row(i) = f.dual.row(idx);
        }
        return std::make_pair(P, D);
    };
    const auto [phiP, phiD] = rows_for(phi, lam_sys);
    const auto [psiP, psiD] = rows_for(psi, mu_sys);

    const double clamp_rel = 3e-11;
    // alpha-residual update: alpha~ += Mpsi beta~; Mpsi[lam, mu]
    const Eigen::MatrixXcd Mpsi =
        detail::cross_matrix(psiP, psiD, psi.grid.xi_points(), psi.grid.dxi, +1.0,
                             lam_sys, a, p, clamp_rel);
    const Eigen::MatrixXcd Mphi =
        detail::cross_matrix(phiP, phiD, phi.grid.x_points(), phi.grid.dx, -1.0,
                             mu_sys, a, q, clamp_rel);

    // targets in tilde coordinates on the system nodes
    Eigen::VectorXcd ka = Eigen::VectorXcd::Zero(lam_sys.size());
    Eigen::VectorXcd kb = Eigen::VectorXcd::Zero(mu_sys.size());
    for (int i = 0; i < target.alpha.size(); ++i) {
        const double node = target.lambda_nodes[i];
        if (std::abs(node) <= L)
            throw ParameterError("solve_free_interpolation: target inside [-L, L]");
        const auto it = std::find(lam_sys.begin(), lam_sys.end(), node);
        if (it == lam_sys.end())
            throw ParameterError("solve_free_interpolation: target node not in the family");
        ka(it - lam_sys.begin()) =
            target.alpha(i) * std::exp(a * std::pow(std::abs(node), p));
    }
    for (int i = 0; i < target.beta.size(); ++i) {
        const double node = target.mu_nodes[i];
        if (std::abs(node) <= L)
            throw ParameterError("solve_free_interpolation: target inside [-L, L]");
        const auto it = std::find(mu_sys.begin(), mu_sys.end(), node);
        if (it == mu_sys.end())
            throw ParameterError("solve_free_interpolation: target node not in the family");
        kb(it - mu_sys.begin()) =
            target.beta(i) * std::exp(a * std::pow(std::abs(node), q));
    }

    SolveResult out;
    Eigen::VectorXcd ca = ka, cb = kb;
    double norm0 = ka.cwiseAbs().sum() + kb.cwiseAbs().sum();
    out.history.push_back(norm0);
    int rising = 0;
    for (int it = 0; it < max_iter && out.history.back() > tol * (1.0 + norm0); ++it) {
        const Eigen::VectorXcd na = -(Mpsi * kb);
        const Eigen::VectorXcd nb = -(Mphi * ka);
        ka = na;
        kb = nb;
        ca += ka;
        cb += kb;
        const double nrm = ka.cwiseAbs().sum() + kb.cwiseAbs().sum();
        const double ratio = nrm / std::max(out.history.back(), 1e-300);
        out.max_ratio = std::max(out.max_ratio, ratio);
        out.history.push_back(nrm);
        rising = ratio >= 1.0 ? rising + 1 : 0;
        if (rising >= 3)
            throw DivergenceError("solve_free_interpolation: three consecutive "
                                  "non-contracting steps (L too small?)");
    }

    // synthesize f on the grid from the tilde coefficients
    const Grid& g = phi.grid;
    std::vector<cplx> sp(g.size, cplx{}), fr(g.size, cplx{});
    for (int i = 0; i < ca.size(); ++i)
        for (int k = 0; k < g.size; ++k) {
            sp[k] += ca(i) * phiP(i, k);
            fr[k] += ca(i) * phiD(i, k);
        }
    for (int i = 0; i < cb.size(); ++i)
        for (int k = 0; k < g.size; ++k) {
            sp[k] += cb(i) * psiD(i, k);
            fr[k] += cb(i) * psiP(i, k);
        }
    out.f = GridFunction::from_both(g, std::move(sp), std::move(fr));

    // verify the defect at the target nodes (true values)
    double resid = 0.0;
    for (int i = 0; i < target.alpha.size(); ++i)
        resid = std::max(resid, std::abs(point_eval(out.f, target.lambda_nodes[i]) -
                                         target.alpha(i)));
    for (int i = 0; i < target.beta.size(); ++i)
        resid = std::max(resid, std::abs(point_eval_freq(out.f, target.mu_nodes[i]) -
                                         target.beta(i)));
    out.residual_max = resid;

    const double gap = phi.a_prime - a;
    double tail = 0.0;
    for (double v : lam_sys) tail += std::exp(-gap * std::pow(std::abs(v), p));
    for (double v : mu_sys) tail += std::exp(-std::max(psi.a_prime - a, 0.0) *
                                             std::pow(std::abs(v), q));
    out.tail_sum = tail;
    out.delta_bound = 1.0 / (4.0 * std::max(phi.C, psi.C));
    out.tail_ok = gap > 0.0 && tail < out.delta_bound;
    return out;
}

} // namespace fpairs
