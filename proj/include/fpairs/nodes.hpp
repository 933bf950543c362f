#pragma once

#include <vector>

#include "fpairs/common.hpp"

namespace fpairs {

/// Finite truncation of a two-sided (or half-line) node sequence, with the
/// exponent of the side it represents and the largest radius it is meant
/// to cover. All asymptotic quantities downstream are tail statistics.
struct NodeSequence {
    std::vector<double> points; // strictly increasing
    double exponent = 2.0;      // p > 1
    double truncation_radius = 0.0;

    static NodeSequence make(std::vector<double> points, double exponent,
                             double truncation_radius);
    bool two_sided() const;
};

enum class Verdict { Supercritical, Subcritical, Critical, Indeterminate };

const char* verdict_name(Verdict v);

struct PairClassification {
    double a_lambda = 0.0;  // tail statistic used for the verdict
    double a_mu = 0.0;
    double combined = 0.0;  // a_lambda^{1/p} a_mu^{1/q}
    Verdict verdict = Verdict::Indeterminate;
    // both proxies, for reporting
    double sup_combined = 0.0;
    double inf_combined = 0.0;
};

/// lambda_j = sign(j) (p a |j| / 2)^{1/p}, 1 <= |j| <= count (j = 0 omitted).
NodeSequence gen_power_nodes(double p, double a, int count);

/// Tail-statistic classification against the dilation-invariant criterion
/// a^{1/p} b^{1/q} vs 1/2, with an indeterminate band around the threshold.
PairClassification classify_pair(const NodeSequence& lambda, const NodeSequence& mu,
                                 double tail_fraction = 0.25, double band = 0.02);

struct SeparationResult {
    bool flag = false;
    double c_best = 0.0;
};

/// Best separation constant: min over consecutive pairs of
/// (gap) (1 + min |endpoint|)^{p-1}.
SeparationResult is_p_separated(const NodeSequence& seq);

/// True iff every gap between consecutive points that meets `window` has
/// length <= l.
bool is_l_dense(const NodeSequence& seq, double l, Interval window);

/// Greedy thinning: walking outward per half-line, keep a point only when
/// kept^{p-1} (candidate - kept) >= delta. Output is a subset of the input
/// and p-separated with constant >= delta.
NodeSequence thin_to_separated(const NodeSequence& seq, double delta);

/// Claim-style smoothing of a positive half-line sequence: map through
/// t = gamma^p, cut [0, r_max^p] into cells of length 1/D, add the center
/// of every empty cell, map back. r_max = 0 uses the truncation radius.
NodeSequence smooth_enlarge(const NodeSequence& seq_positive_half, double density,
                            double r_max = 0.0);

struct UniformSupercritResult {
    bool flag = false;
    double sup_stat = 0.0;
};

/// sup over all gaps (both sequences) of max(|left|,|right|) * gap, compared
/// with 1/2. Stated for p = q = 2 only.
UniformSupercritResult is_uniformly_supercritical(const NodeSequence& lambda,
                                                  const NodeSequence& mu);

} // namespace fpairs
