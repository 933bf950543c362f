#include "fpairs/crystal.hpp"

#include <algorithm>
#include <cmath>

namespace fpairs {

double DiscreteMeasure::l1_norm() const {
    double s = 0.0;
    for (const auto& w : weights) s += std::abs(w);
    return s;
}

std::pair<DiscreteMeasure, DiscreteMeasure>
build_crystalline_measure(const InterpolationBasis& basis, double x) {
    if (std::abs(x) > basis.grid.half_width)
        throw RangeError("build_crystalline_measure: x outside the grid");
    for (double l : basis.lambda_nodes)
        if (std::abs(l - x) < 1e-12)
            throw ConfigError("build_crystalline_measure: x coincides with a basis node; "
                              "rebuild the basis with it removed");

    const Eigen::VectorXcd at_x = basis.values_at(x);
    const int nl = basis.lambda_count();
    const int nm = basis.node_count() - nl;

    DiscreteMeasure nu;
    nu.label = "nu";
    nu.support = basis.mu_nodes;
    nu.weights.resize(nm);
    for (int i = 0; i < nm; ++i) nu.weights[i] = at_x(nl + i);

    DiscreteMeasure nu_hat;
    nu_hat.label = "nu_hat";
    std::vector<std::pair<double, cplx>> atoms;
    atoms.reserve(nl + 1);
    for (int i = 0; i < nl; ++i) atoms.push_back({basis.lambda_nodes[i], -at_x(i)});
    atoms.push_back({x, cplx{1.0, 0.0}});
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [s, w] : atoms) {
        nu_hat.support.push_back(s);
        nu_hat.weights.push_back(w);
    }
    return {nu, nu_hat};
}

std::pair<cplx, cplx> verify_pairing(const DiscreteMeasure& nu,
                                     const DiscreteMeasure& nu_hat,
                                     const GridFunction& g) {
    cplx lhs{};
    for (std::size_t i = 0; i < nu.support.size(); ++i)
        lhs += nu.weights[i] * point_eval_freq(g, nu.support[i]);
    cplx rhs{};
    for (std::size_t i = 0; i < nu_hat.support.size(); ++i)
        rhs += nu_hat.weights[i] * point_eval(g, nu_hat.support[i]);
    return {lhs, rhs};
}

CountingCheck counting_inequality_check(const NodeSequence& lambda,
                                        const NodeSequence& mu, double t_max,
                                        double w_max, int steps) {
    auto count_in = [](const NodeSequence& s, double r) {
        long n = 0;
        for (double v : s.points) n += std::abs(v) <= r;
        return n;
    };
    CountingCheck out;
    for (int i = 0; i < steps; ++i) {
        const double T = 1.0 + (t_max - 1.0) * i / std::max(1, steps - 1);
        for (int j = 0; j < steps; ++j) {
            const double W = 1.0 + (w_max - 1.0) * j / std::max(1, steps - 1);
            const double deficit =
                4.0 * W * T - (count_in(lambda, T) + count_in(mu, W));
            const double lg = std::log(4.0 * W * T);
            if (deficit > 0.0)
                out.fitted_C = std::max(out.fitted_C, deficit / (lg * lg));
            ++out.samples;
        }
    }
    return out;
}

} // namespace fpairs
