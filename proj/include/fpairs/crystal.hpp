#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fpairs/frames.hpp"

namespace fpairs {

struct DiscreteMeasure {
    std::vector<double> support;  // strictly increasing
    std::vector<cplx> weights;
    std::string label;

    double l1_norm() const;
};

/// nu_x = sum b_mu(x) delta_mu and nuhat_x = delta_x - sum a_lambda(x) delta_lambda.
/// If x was a node of the original Lambda, the basis must have been built with
/// it removed.
std::pair<DiscreteMeasure, DiscreteMeasure>
build_crystalline_measure(const InterpolationBasis& basis, double x);

/// Distributional pairing test: <nu, ghat> vs <nuhat, g>, i.e.
/// sum nu(mu) ghat(mu) vs g(x) - sum a_lambda(x) g(lambda).
std::pair<cplx, cplx> verify_pairing(const DiscreteMeasure& nu,
                                     const DiscreteMeasure& nu_hat,
                                     const GridFunction& g);

struct CountingCheck {
    double fitted_C = 0.0;  // max over samples of (4WT - counts)/log^2(4WT), clamped at 0
    long samples = 0;
};

/// Counting-function plausibility: |Lambda cap [-T,T]| + |M cap [-W,W]| >=
/// 4WT - C log^2(4WT) over a (T, W) box.
CountingCheck counting_inequality_check(const NodeSequence& lambda,
                                        const NodeSequence& mu, double t_max,
                                        double w_max, int steps = 8);

} // namespace fpairs
