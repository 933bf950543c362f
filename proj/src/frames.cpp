#include "fpairs/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpairs/constants.hpp"

namespace fpairs {

namespace {

NodeSequence clip_nodes(const NodeSequence& s, double radius, int& clipped) {
    std::vector<double> kept;
    for (double v : s.points)
        if (std::abs(v) <= radius) kept.push_back(v);
    clipped = static_cast<int>(s.points.size() - kept.size());
    if (kept.empty()) throw ConfigError("sampling operator: no nodes inside the grid");
    return NodeSequence::make(std::move(kept), s.exponent,
                              std::min(s.truncation_radius, radius));
}

std::vector<double> node_weights(const NodeSequence& s, double s_par, double expo) {
    std::vector<double> w(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i)
        w[i] = std::pow(1.0 + std::abs(s.points[i]),
                        ((2.0 * s_par - 1.0) * expo + 1.0) / 2.0);
    return w;
}

} // namespace

Eigen::VectorXcd SamplingOperator::apply(const GridFunction& f) const {
    Eigen::VectorXcd out(rows());
    for (std::size_t i = 0; i < lambda.points.size(); ++i)
        out(static_cast<int>(i)) = lambda_weights[i] * point_eval(f, lambda.points[i]);
    const int off = static_cast<int>(lambda.points.size());
    for (std::size_t i = 0; i < mu.points.size(); ++i)
        out(off + static_cast<int>(i)) = mu_weights[i] * point_eval_freq(f, mu.points[i]);
    return out;
}

SamplingOperator build_sampling_operator(const NodeSequence& lambda,
                                         const NodeSequence& mu,
                                         const SpaceParams& params, const Grid& grid) {
    if (!params.frame_admissible())
        throw ParameterError("build_sampling_operator: requires s min(p,q) >= 1");
    SamplingOperator op;
    op.params = params;
    op.grid = grid;
    op.lambda = clip_nodes(lambda, 0.8 * grid.half_width, op.clipped_lambda);
    op.mu = clip_nodes(mu, 0.8 * grid.half_width, op.clipped_mu);
    op.lambda_weights = node_weights(op.lambda, params.s, params.p);
    op.mu_weights = node_weights(op.mu, params.s, params.q);
    return op;
}

FrameModel estimate_frame_bounds(const SamplingOperator& op, int m) {
    if (m < 1 || m > 60)
        throw ParameterError("estimate_frame_bounds: m must lie in [1, 60]");
    FrameModel model;
    model.op = op;
    model.m = m;
    model.basis = hermite_basis(m - 1, op.grid);

    const int rows = op.rows();
    model.sample_matrix.resize(rows, m);
    for (int j = 0; j < m; ++j)
        model.sample_matrix.col(j) = op.apply(model.basis[j]);

    model.gram.resize(m, m);
    const Grid& g = op.grid;
    std::vector<double> wf(g.size), ws(g.size);
    for (int k = 0; k < g.size; ++k) {
        wf[k] = 1.0 + std::pow(std::abs(g.xi(k)), 2.0 * op.params.p * op.params.s);
        ws[k] = 1.0 + std::pow(std::abs(g.x(k)), 2.0 * op.params.q * op.params.s);
    }
    for (int i = 0; i < m; ++i) {
        const auto& fi = model.basis[i];
        for (int j = i; j < m; ++j) {
            const auto& fj = model.basis[j];
            std::vector<cplx> terms(g.size);
            for (int k = 0; k < g.size; ++k)
                terms[k] = wf[k] * std::conj(fi.freq()[k]) * fj.freq()[k] * g.dxi +
                           ws[k] * std::conj(fi.space()[k]) * fj.space()[k] * g.dx;
            const cplx v = pairwise_sum(terms);
            model.gram(i, j) = v;
            model.gram(j, i) = std::conj(v);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ges;
    ges.compute(model.gram);
    const double gmin = ges.eigenvalues().minCoeff();
    const double gmax = ges.eigenvalues().maxCoeff();
    if (gmin <= gmax * 1e-13) {
        int offending = 0;
        ges.eigenvalues().minCoeff(&offending);
        throw ConditioningError("estimate_frame_bounds: Gram numerically singular near n = " +
                                std::to_string(offending));
    }
    model.gram_condition = gmax / gmin;

    const Eigen::MatrixXcd H = model.sample_matrix.adjoint() * model.sample_matrix;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> pencil(H, model.gram);
    model.pencil_values = pencil.eigenvalues();
    model.pencil_vectors = pencil.eigenvectors();
    model.A_raw = model.pencil_values(0);
    model.B_est = model.pencil_values(m - 1);
    model.A_est = std::max(model.A_raw, 0.0);
    model.degenerate = model.A_raw < 1e-12 * std::max(model.B_est, 1.0);
    return model;
}

GridFunction InterpolationBasis::function_at(int idx) const {
    std::vector<cplx> sp(grid.size, cplx{}), fr(grid.size, cplx{});
    for (int j = 0; j < coeffs.rows(); ++j) {
        const cplx c = coeffs(j, idx);
        if (c == cplx{}) continue;
        for (int k = 0; k < grid.size; ++k) {
            sp[k] += c * basis[j].space()[k];
            fr[k] += c * basis[j].freq()[k];
        }
    }
    return GridFunction::from_both(grid, std::move(sp), std::move(fr));
}

Eigen::VectorXcd InterpolationBasis::values_at(double x) const {
    Eigen::VectorXcd h(coeffs.rows());
    for (int j = 0; j < coeffs.rows(); ++j) h(j) = point_eval(basis[j], x);
    return coeffs.transpose() * h;
}

Eigen::VectorXcd InterpolationBasis::freq_values_at(double xi) const {
    Eigen::VectorXcd h(coeffs.rows());
    for (int j = 0; j < coeffs.rows(); ++j) h(j) = point_eval_freq(basis[j], xi);
    return coeffs.transpose() * h;
}

InterpolationBasis build_interpolation_basis(const FrameModel& model) {
    if (model.A_est < 1e-8)
        throw DegenerateFrameError(
            "build_interpolation_basis: restricted lower constant below 1e-8");

    InterpolationBasis ib;
    ib.params = model.op.params;
    ib.grid = model.op.grid;
    ib.lambda_nodes = model.op.lambda.points;
    ib.mu_nodes = model.op.mu.points;
    ib.basis = model.basis;
    ib.frame_A = model.A_est;

    // pencil pseudo-inverse of the normal equations: c = V f(theta)^{-1} V^H S^H y
    const int m = model.m;
    const int n = model.op.rows();
    const double cutoff = 1e-12 * model.pencil_values.maxCoeff();
    Eigen::VectorXd inv(m);
    for (int i = 0; i < m; ++i)
        inv(i) = model.pencil_values(i) > cutoff ? 1.0 / model.pencil_values(i) : 0.0;
    const Eigen::MatrixXcd pinv = model.pencil_vectors * inv.asDiagonal() *
                                  model.pencil_vectors.adjoint() *
                                  model.sample_matrix.adjoint();

    ib.coeffs.resize(m, n);
    ib.residual_norms.resize(n);
    ib.hspq_norms.resize(n);
    const int nl = static_cast<int>(ib.lambda_nodes.size());
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
        y(i) = (i < nl) ? model.op.lambda_weights[i] : model.op.mu_weights[i - nl];
        const Eigen::VectorXcd c = pinv * y;
        ib.coeffs.col(i) = c;
        ib.residual_norms[i] = (model.sample_matrix * c - y).norm();
        ib.hspq_norms[i] = std::sqrt(std::abs((c.adjoint() * model.gram * c)(0).real()));
    }
    return ib;
}

GridFunction reconstruct(const InterpolationBasis& basis,
                         const Eigen::VectorXcd& lambda_samples,
                         const Eigen::VectorXcd& mu_samples) {
    const int nl = basis.lambda_count();
    const int nm = basis.node_count() - nl;
    if (lambda_samples.size() != nl || mu_samples.size() != nm)
        throw ParameterError("reconstruct: sample vectors do not match basis nodes");
    Eigen::VectorXcd coef = Eigen::VectorXcd::Zero(basis.coeffs.rows());
    for (int i = 0; i < nl; ++i) coef += lambda_samples(i) * basis.coeffs.col(i);
    for (int i = 0; i < nm; ++i) coef += mu_samples(i) * basis.coeffs.col(nl + i);

    const Grid& g = basis.grid;
    std::vector<cplx> sp(g.size, cplx{}), fr(g.size, cplx{});
    for (int j = 0; j < coef.size(); ++j) {
        if (coef(j) == cplx{}) continue;
        for (int k = 0; k < g.size; ++k) {
            sp[k] += coef(j) * basis.basis[j].space()[k];
            fr[k] += coef(j) * basis.basis[j].freq()[k];
        }
    }
    return GridFunction::from_both(g, std::move(sp), std::move(fr));
}

DsDemoResult duffin_schaeffer_demo(const FrameModel& model,
                                   const std::vector<int>& removed_rows) {
    if (removed_rows.size() > 5)
        throw ParameterError("duffin_schaeffer_demo: remove at most 5 rows");
    for (int r : removed_rows)
        if (r < 0 || r >= model.sample_matrix.rows())
            throw ParameterError("duffin_schaeffer_demo: row index out of range");

    DsDemoResult out;
    out.A_before = model.A_est;

    std::vector<char> drop(model.sample_matrix.rows(), 0);
    for (int r : removed_rows) drop[r] = 1;
    const int kept = static_cast<int>(model.sample_matrix.rows()) -
                     static_cast<int>(removed_rows.size());
    Eigen::MatrixXcd S(kept, model.m);
    int r2 = 0;
    for (int r = 0; r < model.sample_matrix.rows(); ++r)
        if (!drop[r]) S.row(r2++) = model.sample_matrix.row(r);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
    const auto& sv = svd.singularValues();
    const double tol = sv.size() ? sv(0) * 1e-12 : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv(i) > tol;
    out.rank_ok = (kept >= model.m) && (rank >= model.m);
    if (!out.rank_ok) return out; // completeness violation, reported not thrown

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> pencil(S.adjoint() * S,
                                                                      model.gram);
    out.A_after = std::max(pencil.eigenvalues()(0), 0.0);
    return out;
}

namespace {

// least-squares slope of log|values| against log|nodes|
double loglog_slope(const std::vector<double>& nodes, const std::vector<double>& mags) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(nodes[i]) < 1.0 || mags[i] <= 0.0) continue;
        const double x = std::log(std::abs(nodes[i]));
        const double y = std::log(std::max(mags[i], 1e-300));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 8) throw InsufficientDataError("decay check: fewer than 8 usable nodes");
    const double det = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / det;
}

} // namespace

DecayReport decay_to_schwartz_check(const GridFunction& f, const NodeSequence& lambda,
                                    const NodeSequence& mu,
                                    const std::vector<double>& r_list) {
    DecayReport rep;
    const double sup = [&] {
        double s = 0.0;
        for (const auto& z : f.space()) s = std::max(s, std::abs(z));
        return s;
    }();
    rep.degenerate = sup == 0.0;

    std::vector<double> lv, lm, mv, mm;
    for (double x : lambda.points)
        if (std::abs(x) <= f.grid().half_width) {
            lv.push_back(x);
            lm.push_back(std::abs(point_eval(f, x)));
        }
    for (double x : mu.points)
        if (std::abs(x) <= f.grid().xi_half_width) {
            mv.push_back(x);
            mm.push_back(std::abs(point_eval_freq(f, x)));
        }

    const Grid& g = f.grid();
    const double minpq = std::min(lambda.exponent, mu.exponent);
    for (double r : r_list) {
        DecayEntry e;
        e.r = r;
        if (rep.degenerate) {
            e.slopes_pass = e.norm_proxy_pass = e.consistent = true;
            rep.entries.push_back(e);
            continue;
        }
        e.slope_lambda = loglog_slope(lv, lm);
        e.slope_mu = loglog_slope(mv, mm);
        const SpaceParams sp = SpaceParams::make(r / minpq, lambda.exponent, mu.exponent);
        e.hspq_sq = hspq_norm_sq(f, sp);
        e.slopes_pass = e.slope_lambda <= -r + 0.2 && e.slope_mu <= -r + 0.2;

        // outer-half share of the weighted integrand (divergence concentrates it there)
        double inner = 0.0, outer = 0.0;
        for (int k = 0; k < g.size; ++k) {
            const double wq = (1.0 + std::pow(std::abs(g.x(k)), 2.0 * sp.q * sp.s)) *
                              std::norm(f.space()[k]) * g.dx;
            const double wp = (1.0 + std::pow(std::abs(g.xi(k)), 2.0 * sp.p * sp.s)) *
                              std::norm(f.freq()[k]) * g.dxi;
            if (std::abs(g.x(k)) > 0.5 * g.half_width) outer += wq; else inner += wq;
            if (std::abs(g.xi(k)) > 0.5 * g.xi_half_width) outer += wp; else inner += wp;
        }
        e.norm_proxy_pass = outer <= inner;
        e.consistent = e.slopes_pass == e.norm_proxy_pass;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace fpairs
