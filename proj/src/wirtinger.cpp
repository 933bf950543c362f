#include "fpairs/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpairs/constants.hpp"

namespace fpairs {

double restricted_l2_sq_values(const std::vector<cplx>& values, const Grid& g,
                               double a, double b) {
    if (!(a < b)) throw ParameterError("restricted integral: need a < b");
    if (a < -g.half_width || b > g.half_width)
        throw RangeError("restricted integral: interval outside grid");
    std::vector<double> terms;
    terms.reserve(g.size);
    for (int k = 0; k < g.size; ++k) {
        const double lo = std::max(a, g.x(k) - 0.5 * g.dx);
        const double hi = std::min(b, g.x(k) + 0.5 * g.dx);
        if (hi > lo) terms.push_back(std::norm(values[k]) * (hi - lo));
    }
    return pairwise_sum(std::span<const double>(terms));
}

double restricted_l2_sq(const GridFunction& f, double a, double b) {
    return restricted_l2_sq_values(f.space(), f.grid(), a, b);
}

CheckResult check_pw_stable(const GridFunction& f, double a, double b, double eps,
                            double rhs_scale) {
    if (!(eps > 0.0)) throw ParameterError("check_pw_stable: eps must be positive");
    const GridFunction df = spectral_derivative(f);
    const double lhs = restricted_l2_sq(f, a, b);
    const double d2 = restricted_l2_sq(df, a, b);
    const double h = b - a;
    const double ends = std::norm(point_eval(f, a)) + std::norm(point_eval(f, b));
    const double rhs = (1.0 + eps) * (h / constants::pi) * (h / constants::pi) * d2 +
                       (1.0 + 1.0 / eps) * h * ends;
    return CheckResult{lhs, rhs * rhs_scale};
}

CheckResult check_trace(const GridFunction& f, double a, double b, double rhs_scale) {
    const GridFunction df = spectral_derivative(f);
    const double h = b - a;
    const double lhs = std::norm(point_eval(f, a)) / h;
    const double rhs =
        2.0 / (h * h) * restricted_l2_sq(f, a, b) + (2.0 / 3.0) * restricted_l2_sq(df, a, b);
    return CheckResult{lhs, rhs * rhs_scale};
}

CheckResult check_trace_general(const GridFunction& f, const NodeSequence& gamma,
                                double delta, double theta, double rhs_scale) {
    if (!(delta > 0.0)) throw ParameterError("check_trace_general: delta must be positive");
    if (!(theta >= 1.0)) throw ParameterError("check_trace_general: theta must be >= 1");
    const auto& pts = gamma.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] - pts[i] < delta * (1.0 - 1e-12))
            throw ParameterError("check_trace_general: gap below delta");

    std::vector<double> samp(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        samp[i] = std::norm(point_eval(f, pts[i]));
    const double lhs = delta * pairwise_sum(std::span<const double>(samp));

    const Grid& g = f.grid();
    const auto& fr = f.freq();
    std::vector<double> terms(g.size);
    for (int m = 0; m < g.size; ++m)
        terms[m] = std::pow(std::abs(g.xi(m)), 2.0 * theta) * std::norm(fr[m]);
    const double weighted = pairwise_sum(terms) * g.dxi;
    const double rhs = constants::trace_general_C *
                       (l2_norm_sq(f) + std::pow(delta, 2.0 * theta) * weighted);
    return CheckResult{lhs, rhs * rhs_scale};
}

namespace {

// Smallest centered interval holding all but 1e-10 of the squared mass.
Interval support_window(const GridFunction& f) {
    const auto& sp = f.space();
    const Grid& g = f.grid();
    double total = 0.0;
    for (const auto& z : sp) total += std::norm(z);
    if (total == 0.0) return Interval{-g.half_width, g.half_width};
    const int mid = g.size / 2;
    double acc = std::norm(sp[mid]);
    int r = 0;
    while (acc < total * (1.0 - 1e-10) && r < mid - 1) {
        ++r;
        acc += std::norm(sp[mid - r]) + std::norm(sp[mid + r]);
    }
    return Interval{g.x(mid - r), g.x(mid + r)};
}

} // namespace

CheckResult check_wirt2(const GridFunction& f, const NodeSequence& gamma, double t,
                        double eps, double theta, bool vanishing, double rhs_scale) {
    if (!(t > 0.0)) throw ParameterError("check_wirt2: t must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("check_wirt2: eps must lie in (0,1)");
    if (!(theta >= 1.0)) throw ParameterError("check_wirt2: theta must be >= 1");

    const double l_req = vanishing ? 1.0 / (2.0 * t) : (1.0 - eps) / (2.0 * t);
    Interval win = support_window(f);
    win.lo = std::max(win.lo, gamma.points.front());
    win.hi = std::min(win.hi, gamma.points.back());
    if (!(win.lo < win.hi) || !is_l_dense(gamma, l_req * (1.0 + 1e-12), win))
        throw ParameterError("check_wirt2: gamma is not dense enough on the support window");

    std::vector<double> samp(gamma.points.size());
    double sup = 0.0;
    for (const auto& z : f.space()) sup = std::max(sup, std::abs(z));
    for (std::size_t i = 0; i < gamma.points.size(); ++i)
        samp[i] = std::norm(point_eval(f, gamma.points[i]));
    if (vanishing) {
        for (double s2 : samp)
            if (std::sqrt(s2) > 1e-9 * sup)
                throw ParameterError("check_wirt2: f does not vanish on gamma");
    }

    const double lhs = std::pow(t * t, theta) * l2_norm_sq(f);
    const Grid& g = f.grid();
    const auto& fr = f.freq();
    std::vector<double> terms(g.size);
    for (int m = 0; m < g.size; ++m)
        terms[m] = std::pow(g.xi(m) * g.xi(m), theta) * std::norm(fr[m]);
    double rhs = pairwise_sum(terms) * g.dxi;
    if (!vanishing) {
        const double phi_prime = theta * std::pow(t * t, theta - 1.0);
        rhs += constants::wirt2_c_eps(eps) * t * phi_prime *
               pairwise_sum(std::span<const double>(samp));
    }
    return CheckResult{lhs, rhs * rhs_scale};
}

SuiteConfig SuiteConfig::defaults() {
    SuiteConfig c;
    c.intervals = {
        {-8.0, -4.0}, {-4.0, -2.0}, {-2.0, -1.9}, {-1.0, 0.0}, {0.0, 0.1},
        {0.0, 1.0},   {1.0, 3.0},   {2.0, 2.5},   {3.0, 7.0},  {-0.05, 0.05},
        {5.0, 5.5},   {-3.0, 1.0}};
    c.eps_values = {0.1, 1.0, 10.0};
    c.thetas = {1.0, 2.0};
    return c;
}

namespace {

NodeSequence lattice(double spacing, double radius, double exponent = 2.0) {
    std::vector<double> pts;
    for (long k = -static_cast<long>(std::floor(radius / spacing));
         k <= static_cast<long>(std::floor(radius / spacing)); ++k)
        pts.push_back(k * spacing);
    return NodeSequence::make(std::move(pts), exponent, radius);
}

} // namespace

InequalityReport run_suite(const std::vector<GridFunction>& corpus,
                           const SuiteConfig& cfg0) {
    if (corpus.empty()) throw ParameterError("run_suite: corpus is empty");
    SuiteConfig cfg = cfg0;
    if (cfg.intervals.empty()) cfg.intervals = SuiteConfig::defaults().intervals;
    if (cfg.eps_values.empty()) cfg.eps_values = SuiteConfig::defaults().eps_values;
    if (cfg.thetas.empty()) cfg.thetas = SuiteConfig::defaults().thetas;

    InequalityReport rep;
    rep.name = "wirtinger-suite";
    rep.tolerance = cfg.tolerance;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    const double ds = cfg.constant_scale;

    auto record = [&](const std::string& id, const CheckResult& r) {
        ++rep.cases_run;
        rep.worst_slack = std::min(rep.worst_slack, r.slack());
        if (r.slack() < -cfg.tolerance) rep.violations.push_back({id, r.lhs, r.rhs});
    };
    auto guarded = [&](const std::string& id, auto&& fn) {
        try {
            record(id, fn());
        } catch (const Error& e) {
            rep.errors.push_back(id + ": " + e.what());
        }
    };

    const NodeSequence ints = lattice(1.0, 8.0);
    const NodeSequence halves = lattice(0.5, 8.0);

    for (std::size_t fi = 0; fi < corpus.size(); ++fi) {
        const GridFunction& f = corpus[fi];
        const std::string fid = "f" + std::to_string(fi);

        for (std::size_t ii = 0; ii < cfg.intervals.size(); ++ii) {
            const Interval iv = cfg.intervals[ii];
            const std::string ivid = fid + "/iv" + std::to_string(ii);
            for (double eps : cfg.eps_values)
                guarded("pw/" + ivid + "/eps" + std::to_string(eps), [&] {
                    return check_pw_stable(f, iv.lo, iv.hi, eps, ds);
                });
            guarded("trace/" + ivid, [&] { return check_trace(f, iv.lo, iv.hi, ds); });
        }

        for (double theta : cfg.thetas) {
            guarded("tracegen/" + fid + "/d1/th" + std::to_string(theta),
                    [&] { return check_trace_general(f, ints, 1.0, theta, ds); });
            guarded("tracegen/" + fid + "/d0.5/th" + std::to_string(theta),
                    [&] { return check_trace_general(f, halves, 0.5, theta, ds); });
        }

        struct W2 { double t, eps, theta; };
        for (const W2& w : {W2{2.0, 0.2, 1.0}, W2{2.0, 0.2, 2.0}, W2{4.0, 0.5, 1.0}}) {
            const double spacing = (1.0 - w.eps) / (2.0 * w.t);
            const NodeSequence gam = lattice(spacing, 10.5);
            guarded("wirt2i/" + fid + "/t" + std::to_string(w.t) + "/th" +
                        std::to_string(w.theta),
                    [&] { return check_wirt2(f, gam, w.t, w.eps, w.theta, false, ds); });
        }
    }

    // part (ii): windowed sine vanishing on the lattice (2t)^{-1} Z
    const Grid g = corpus.front().grid();
    for (double t : {1.0, 2.0}) {
        std::vector<cplx> vals(g.size);
        for (int k = 0; k < g.size; ++k) {
            const double x = g.x(k);
            vals[k] = std::sin(2.0 * constants::pi * t * x) * std::exp(-x * x / 9.0);
        }
        GridFunction f = fourier_transform(GridFunction::from_space(g, std::move(vals)));
        const NodeSequence gam = lattice(1.0 / (2.0 * t), 10.5);
        for (double theta : cfg.thetas)
            guarded("wirt2ii/t" + std::to_string(t) + "/th" + std::to_string(theta),
                    [&] { return check_wirt2(f, gam, t, 0.5, theta, true, ds); });
    }

    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const Violation& a, const Violation& b) { return a.case_id < b.case_id; });
    return rep;
}

InequalityReport run_default_suite(const SuiteConfig& config) {
    const Grid g = Grid::make(config.grid_x, config.grid_n);
    return run_suite(hermite_basis(config.hermite_n_max, g), config);
}

} // namespace fpairs
