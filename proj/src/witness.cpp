#include <algorithm>
#include <cmath>
#include <limits>

#include "fpairs/constants.hpp"
#include "fpairs/nonuniq.hpp"

namespace fpairs {

namespace detail {
Eigen::MatrixXcd cross_matrix(const Eigen::MatrixXcd& src_primal,
                              const Eigen::MatrixXcd& src_other,
                              const std::vector<double>& src_axis, double axis_step,
                              double sgn, const std::vector<double>& to, double a,
                              double p_to, double clamp_rel);
}

namespace {

struct EnlargedSide {
    std::vector<double> all;   // two-sided enlarged node list
    std::vector<double> added; // enlarged minus original
};

EnlargedSide enlarge_two_sided(const NodeSequence& seq, double density, double r_edge) {
    std::vector<double> pos, neg_abs;
    for (double v : seq.points) {
        if (v > 0.0 && v <= r_edge) pos.push_back(v);
        if (v < 0.0 && -v <= r_edge) neg_abs.push_back(-v);
    }
    std::sort(neg_abs.begin(), neg_abs.end());
    if (pos.empty() || neg_abs.empty())
        throw ParameterError("witness: node set must be two-sided");

    auto enlarge_half = [&](std::vector<double> half) {
        NodeSequence h = NodeSequence::make(std::move(half), seq.exponent, r_edge);
        NodeSequence e = smooth_enlarge(h, density, r_edge);
        std::vector<double> out;
        for (double v : e.points)
            if (std::pow(v, seq.exponent) < e.truncation_radius * e.truncation_radius *
                                                (1.0 + 1e-12)) // keep within the cell edge
                out.push_back(v);
        return out;
    };
    const std::vector<double> epos = enlarge_half(pos);
    const std::vector<double> eneg = enlarge_half(neg_abs);

    EnlargedSide out;
    for (auto it = eneg.rbegin(); it != eneg.rend(); ++it) out.all.push_back(-*it);
    for (double v : epos) out.all.push_back(v);

    auto is_original = [&](double v) {
        for (double w : seq.points)
            if (std::abs(w - v) < 1e-11 * (1.0 + std::abs(v))) return true;
        return false;
    };
    for (double v : out.all)
        if (!is_original(v)) out.added.push_back(v);
    return out;
}

LevinProduct symmetric_product(const KpFunction& kp, const EnlargedSide& side,
                               double density, double r_edge) {
    std::vector<double> pos, neg_abs;
    for (double v : side.all) (v > 0.0 ? pos : neg_abs).push_back(std::abs(v));
    std::sort(neg_abs.begin(), neg_abs.end());
    const NodeSequence imag = ideal_smooth_ray(density, kp.p, r_edge);

    std::vector<NodeSequence> sets;
    for (double theta : kp.jump_angles) {
        if (std::abs(theta) < 1e-12)
            sets.push_back(NodeSequence::make(pos, kp.p, r_edge));
        else if (std::abs(std::abs(theta) - constants::pi) < 1e-12)
            sets.push_back(NodeSequence::make(neg_abs, kp.p, r_edge));
        else
            sets.push_back(imag);
    }
    return build_levin_product(kp, sets, r_edge);
}

} // namespace

WitnessResult construct_nonuniqueness_witness(const NodeSequence& lambda,
                                              const NodeSequence& mu,
                                              const WitnessConfig& cfg) {
    if (std::abs(lambda.exponent - 2.0) > 1e-12 || std::abs(mu.exponent - 2.0) > 1e-12)
        throw ParameterError("witness: end-to-end construction supports p = q = 2");
    const double p = 2.0, q = 2.0;

    const PairClassification cls = classify_pair(lambda, mu);
    if (cls.verdict != Verdict::Subcritical)
        throw ParameterError(std::string("witness: pair classifies as ") +
                             verdict_name(cls.verdict) + ", need subcritical");

    WitnessResult res;
    res.classification = cls.verdict;
    res.sigma = cfg.sigma;
    res.beta = cfg.beta;
    res.a = cfg.beta * (1.0 + cfg.eps_a);
    res.L = cfg.L;

    const double density = 2.0 * cfg.sigma / p;
    if (!(density * 2.0 > cls.a_lambda))
        throw ConfigError("witness: sigma too small for the pair density");

    const double s_claim = 0.5 * (cfg.sigma * cfg.sigma + 1.0);
    const double b = cfg.b > 0.0 ? cfg.b : std::sqrt(constants::pi * s_claim / cfg.beta);
    KpFunction kp = build_kp(p, cfg.sigma, b, s_claim);
    if (std::abs(kp.beta - cfg.beta) > 1e-9)
        throw ConfigError("witness: beta/b mismatch in the kp construction");
    if (kp_claim_margin(kp, b) <= 0.0)
        throw ConfigError("witness: b below the admissible threshold b0");

    const Grid grid = Grid::make(cfg.grid_x, cfg.grid_n);
    if (cfg.R < grid.half_width / 0.8)
        throw ConfigError("witness: R must cover the grid (R >= X/0.8)");

    // cell-edge aligned listing radius, so the analytic tail continues the
    // lattice exactly
    const long ncell = static_cast<long>(std::floor(cfg.R * cfg.R * density));
    const double u_edge = ncell / density;
    const double r_edge = std::sqrt(u_edge);

    const EnlargedSide lam_side = enlarge_two_sided(lambda, density, r_edge);
    const EnlargedSide mu_side = enlarge_two_sided(mu, density, r_edge);

    const LevinProduct prod_lam = symmetric_product(kp, lam_side, density, r_edge);
    const LevinProduct prod_mu = symmetric_product(kp, mu_side, density, r_edge);

    // family nodes: the interpolation system plus the added seeds inside [-L, L]
    auto family_nodes = [&](const EnlargedSide& side) {
        std::vector<double> nodes;
        for (double v : side.all)
            if (std::abs(v) > cfg.L && std::abs(v) <= cfg.node_radius) nodes.push_back(v);
        for (double v : side.added)
            if (std::abs(v) <= cfg.L) nodes.push_back(v);
        std::sort(nodes.begin(), nodes.end());
        return nodes;
    };
    const std::vector<double> lam_fam_nodes = family_nodes(lam_side);
    const std::vector<double> mu_fam_nodes = family_nodes(mu_side);

    const double a = res.a;
    const InterpolantFamily phi =
        build_interpolant_family(prod_lam, lam_fam_nodes, grid, a, FamilySide::Space);
    const InterpolantFamily psi =
        build_interpolant_family(prod_mu, mu_fam_nodes, grid, a, FamilySide::Frequency);
    res.a_prime = std::min(phi.a_prime, psi.a_prime);
    res.a_dprime = std::min(phi.a_dprime, psi.a_dprime);
    res.family_C = std::max(phi.C, psi.C);

    // system rows (|node| > L) of both families
    std::vector<double> lam_sys, mu_sys;
    std::vector<int> lam_sys_idx, mu_sys_idx;
    for (std::size_t i = 0; i < lam_fam_nodes.size(); ++i)
        if (std::abs(lam_fam_nodes[i]) > cfg.L) {
            lam_sys.push_back(lam_fam_nodes[i]);
            lam_sys_idx.push_back(static_cast<int>(i));
        }
    for (std::size_t i = 0; i < mu_fam_nodes.size(); ++i)
        if (std::abs(mu_fam_nodes[i]) > cfg.L) {
            mu_sys.push_back(mu_fam_nodes[i]);
            mu_sys_idx.push_back(static_cast<int>(i));
        }
    const int nl = static_cast<int>(lam_sys.size());
    const int nm = static_cast<int>(mu_sys.size());

    auto take_rows = [](const Eigen::MatrixXcd& m, const std::vector<int>& idx) {
        Eigen::MatrixXcd out(idx.size(), m.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = m.row(idx[i]);
        return out;
    };
    const Eigen::MatrixXcd phiP = take_rows(phi.primal, lam_sys_idx);
    const Eigen::MatrixXcd phiD = take_rows(phi.dual, lam_sys_idx);
    const Eigen::MatrixXcd psiP = take_rows(psi.primal, mu_sys_idx);
    const Eigen::MatrixXcd psiD = take_rows(psi.dual, mu_sys_idx);

    const Eigen::MatrixXcd Mpsi = detail::cross_matrix(
        psiP, psiD, grid.xi_points(), grid.dxi, +1.0, lam_sys, a, p, cfg.clamp);
    const Eigen::MatrixXcd Mphi = detail::cross_matrix(
        phiP, phiD, grid.x_points(), grid.dx, -1.0, mu_sys, a, q, cfg.clamp);

    // contraction-compliant radius: beyond it every column sum is small
    double l_tail = cfg.L;
    for (int j = 0; j < nm; ++j)
        if (Mpsi.col(j).cwiseAbs().sum() > cfg.colsum_cap)
            l_tail = std::max(l_tail, std::abs(mu_sys[j]));
    for (int j = 0; j < nl; ++j)
        if (Mphi.col(j).cwiseAbs().sum() > cfg.colsum_cap)
            l_tail = std::max(l_tail, std::abs(lam_sys[j]));
    res.L_tail = l_tail;

    // basis targets
    auto added_in = [](const EnlargedSide& side, double lo, double hi) {
        std::vector<double> v;
        for (double g : side.added)
            if (std::abs(g) > lo && std::abs(g) <= hi) v.push_back(g);
        return v;
    };
    const std::vector<double> lam_targets = added_in(lam_side, cfg.L, cfg.node_radius);
    const std::vector<double> mu_targets = added_in(mu_side, cfg.L, cfg.node_radius);
    const std::vector<double> lam_seeds = added_in(lam_side, -1.0, cfg.L);
    const std::vector<double> mu_seeds = added_in(mu_side, -1.0, cfg.L);

    const int nb = static_cast<int>(lam_targets.size() + mu_targets.size() +
                                    lam_seeds.size() + mu_seeds.size());
    res.basis_dim = nb;

    // contraction demonstration: batched iteration on the tail-compliant targets
    {
        std::vector<int> cols_a, cols_b;
        for (std::size_t i = 0; i < lam_targets.size(); ++i)
            if (std::abs(lam_targets[i]) > l_tail) {
                const auto it = std::find(lam_sys.begin(), lam_sys.end(), lam_targets[i]);
                cols_a.push_back(static_cast<int>(it - lam_sys.begin()));
            }
        for (std::size_t i = 0; i < mu_targets.size(); ++i)
            if (std::abs(mu_targets[i]) > l_tail) {
                const auto it = std::find(mu_sys.begin(), mu_sys.end(), mu_targets[i]);
                cols_b.push_back(static_cast<int>(it - mu_sys.begin()));
            }
        const int nt = static_cast<int>(cols_a.size() + cols_b.size());
        if (nt > 0) {
            Eigen::MatrixXcd Ka = Eigen::MatrixXcd::Zero(nl, nt);
            Eigen::MatrixXcd Kb = Eigen::MatrixXcd::Zero(nm, nt);
            for (std::size_t i = 0; i < cols_a.size(); ++i) Ka(cols_a[i], i) = 1.0;
            for (std::size_t i = 0; i < cols_b.size(); ++i)
                Kb(cols_b[i], cols_a.size() + i) = 1.0;
            auto colnorm = [](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
                double worst = 0.0;
                for (int j = 0; j < A.cols(); ++j)
                    worst = std::max(worst,
                                     A.col(j).cwiseAbs().sum() + B.col(j).cwiseAbs().sum());
                return worst;
            };
            res.history.push_back(colnorm(Ka, Kb));
            for (int it = 0; it < cfg.max_iter; ++it) {
                const Eigen::MatrixXcd na = -(Mpsi * Kb);
                const Eigen::MatrixXcd nb2 = -(Mphi * Ka);
                Ka = na;
                Kb = nb2;
                const double nrm = colnorm(Ka, Kb);
                res.max_ratio =
                    std::max(res.max_ratio, nrm / std::max(res.history.back(), 1e-300));
                res.history.push_back(nrm);
                if (nrm < 1e-12) break;
            }
        }
    }

    // all basis coefficients by one direct solve of (I + R) C = RHS
    Eigen::MatrixXcd RHS = Eigen::MatrixXcd::Zero(nl + nm, nb);
    int col = 0;
    for (double gmm : lam_targets) {
        const auto it = std::find(lam_sys.begin(), lam_sys.end(), gmm);
        RHS(it - lam_sys.begin(), col++) = 1.0;
    }
    for (double gmm : mu_targets) {
        const auto it = std::find(mu_sys.begin(), mu_sys.end(), gmm);
        RHS(nl + (it - mu_sys.begin()), col++) = 1.0;
    }
    // inner seeds: cardinal functions whose cross-side defects enter the RHS
    auto seed_rows = [&](const InterpolantFamily& fam, const std::vector<double>& seeds) {
        Eigen::MatrixXcd P(seeds.size(), grid.size), D(seeds.size(), grid.size);
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const auto it = std::find(fam.nodes.begin(), fam.nodes.end(), seeds[i]);
            const int idx = static_cast<int>(it - fam.nodes.begin());
            P.row(i) = fam.primal.row(idx);
            D.row(i) = fam.dual.row(idx);
        }
        return std::make_pair(P, D);
    };
    const auto [lamSeedP, lamSeedD] = seed_rows(phi, lam_seeds);
    const auto [muSeedP, muSeedD] = seed_rows(psi, mu_seeds);
    if (!lam_seeds.empty()) {
        const Eigen::MatrixXcd Dbeta =
            detail::cross_matrix(lamSeedP, lamSeedD, grid.x_points(), grid.dx, -1.0,
                                 mu_sys, a, q, cfg.clamp);
        RHS.block(nl, col, nm, lam_seeds.size()) = -Dbeta;
        col += static_cast<int>(lam_seeds.size());
    }
    if (!mu_seeds.empty()) {
        const Eigen::MatrixXcd Dalpha =
            detail::cross_matrix(muSeedP, muSeedD, grid.xi_points(), grid.dxi, +1.0,
                                 lam_sys, a, p, cfg.clamp);
        RHS.block(0, col, nl, mu_seeds.size()) = -Dalpha;
        col += static_cast<int>(mu_seeds.size());
    }

    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(nl + nm, nl + nm);
    op.block(0, nl, nl, nm) = Mpsi;
    op.block(nl, 0, nm, nl) = Mphi;
    const Eigen::MatrixXcd C = op.partialPivLu().solve(RHS);
    const Eigen::MatrixXcd Ca = C.topRows(nl);
    const Eigen::MatrixXcd Cb = C.bottomRows(nm);

    // synthesized basis functions on the grid (space and frequency sides)
    Eigen::MatrixXcd FSa = Ca.transpose() * phiP + Cb.transpose() * psiD;
    Eigen::MatrixXcd FSh = Ca.transpose() * phiD + Cb.transpose() * psiP;
    {
        int row = static_cast<int>(lam_targets.size() + mu_targets.size());
        for (std::size_t i = 0; i < lam_seeds.size(); ++i, ++row) {
            FSa.row(row) += lamSeedP.row(i);
            FSh.row(row) += lamSeedD.row(i);
        }
        for (std::size_t i = 0; i < mu_seeds.size(); ++i, ++row) {
            FSa.row(row) += muSeedD.row(i);
            FSh.row(row) += muSeedP.row(i);
        }
    }
    for (int i = 0; i < nb; ++i) {
        const double nrm = std::sqrt(FSa.row(i).squaredNorm() * grid.dx);
        if (nrm > 0.0) {
            FSa.row(i) /= nrm;
            FSh.row(i) /= nrm;
        }
    }

    // inner constraints: f at original lambda nodes, fhat at original mu nodes
    auto inner_originals = [&](const NodeSequence& seq) {
        std::vector<double> v;
        for (double x : seq.points)
            if (std::abs(x) <= cfg.L) v.push_back(x);
        return v;
    };
    const std::vector<double> lam_inner = inner_originals(lambda);
    const std::vector<double> mu_inner = inner_originals(mu);
    const int nc = static_cast<int>(lam_inner.size() + mu_inner.size());
    res.constraint_rows = nc;

    Eigen::MatrixXcd E(nc, nb);
    for (std::size_t t = 0; t < lam_inner.size(); ++t) {
        Eigen::VectorXcd e(grid.size);
        for (int m = 0; m < grid.size; ++m) {
            const double ph = 2.0 * constants::pi * grid.xi(m) * lam_inner[t];
            e(m) = cplx(std::cos(ph), std::sin(ph)) * grid.dxi;
        }
        E.row(t) = (FSh * e).transpose();
    }
    for (std::size_t t = 0; t < mu_inner.size(); ++t) {
        Eigen::VectorXcd e(grid.size);
        for (int k = 0; k < grid.size; ++k) {
            const double ph = -2.0 * constants::pi * grid.x(k) * mu_inner[t];
            e(k) = cplx(std::cos(ph), std::sin(ph)) * grid.dx;
        }
        E.row(lam_inner.size() + t) = (FSa * e).transpose();
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv(i) > sv(0) * cfg.svd_threshold;
    res.constraint_rank = rank;
    res.null_dim = nb - rank;
    if (res.null_dim < 1)
        throw ConfigError("witness: insufficient basis dimension against the inner "
                          "constraints (effective rank " + std::to_string(rank) + ")");

    // full null space of E: the thin V covers rank directions; complete it
    Eigen::MatrixXcd V = svd.matrixV();
    Eigen::MatrixXcd nullb(nb, res.null_dim);
    {
        // basis of the orthogonal complement of the first `rank` columns of V
        Eigen::MatrixXcd Vr = V.leftCols(rank);
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(nb, nb) - Vr * Vr.adjoint();
        Eigen::JacobiSVD<Eigen::MatrixXcd> psvd(proj, Eigen::ComputeThinU);
        nullb = psvd.matrixU().leftCols(res.null_dim);
    }

    const Eigen::MatrixXcd FS_null = nullb.transpose() * FSa;
    const Eigen::MatrixXcd W = FS_null * FS_null.adjoint() * grid.dx;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W);
    const Eigen::VectorXcd cvec = nullb * es.eigenvectors().col(res.null_dim - 1);

    Eigen::VectorXcd fs = (cvec.transpose() * FSa).transpose();
    Eigen::VectorXcd fh = (cvec.transpose() * FSh).transpose();
    const double l2 = std::sqrt(fs.squaredNorm() * grid.dx);
    if (!(l2 > 0.0)) throw ConfigError("witness: null-space function vanished");
    fs /= l2;
    fh /= l2;
    res.l2_norm = 1.0;

    std::vector<cplx> sp(grid.size), fr(grid.size);
    for (int k = 0; k < grid.size; ++k) {
        sp[k] = fs(k);
        fr[k] = fh(k);
    }
    res.f = GridFunction::from_both(grid, std::move(sp), std::move(fr));

    // verification at every original node inside the grid
    double supf = 0.0, suph = 0.0;
    for (const auto& z : res.f.space()) supf = std::max(supf, std::abs(z));
    for (const auto& z : res.f.freq()) suph = std::max(suph, std::abs(z));
    double worst_f = 0.0, worst_h = 0.0;
    for (double x : lambda.points)
        if (std::abs(x) <= grid.half_width)
            worst_f = std::max(worst_f, std::abs(point_eval(res.f, x)));
    for (double x : mu.points)
        if (std::abs(x) <= grid.half_width)
            worst_h = std::max(worst_h, std::abs(point_eval_freq(res.f, x)));
    res.residual_f = worst_f / supf;
    res.residual_fhat = worst_h / suph;

    res.gs_c = std::min(0.9 * res.a_dprime, 50.0 / (grid.half_width * grid.half_width));
    const GsDiagnostic gs = gelfand_shilov_diagnostic(res.f, p, q, res.gs_c);
    res.gs_space = gs.space_integral;
    res.gs_freq = gs.freq_integral;

    const double gap = res.a_prime - a;
    double tail = 0.0;
    for (double v : lam_sys) tail += std::exp(-std::max(gap, 0.0) * v * v);
    for (double v : mu_sys) tail += std::exp(-std::max(gap, 0.0) * v * v);
    res.tail_sum = tail;
    res.delta_bound = 1.0 / (4.0 * res.family_C);
    res.tail_ok = gap > 0.0 && tail < res.delta_bound;
    return res;
}

} // namespace fpairs
