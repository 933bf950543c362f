#include "fpairs/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fpairs {

NodeSequence NodeSequence::make(std::vector<double> points, double exponent,
                                double truncation_radius) {
    if (!(exponent > 1.0))
        throw ParameterError("NodeSequence: exponent must exceed 1");
    if (!(truncation_radius > 0.0))
        throw ParameterError("NodeSequence: truncation radius must be positive");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw ParameterError("NodeSequence: points must be strictly increasing");
    NodeSequence s;
    s.points = std::move(points);
    s.exponent = exponent;
    s.truncation_radius = truncation_radius;
    return s;
}

bool NodeSequence::two_sided() const {
    return !points.empty() && points.front() < 0.0 && points.back() > 0.0;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Supercritical: return "supercritical";
        case Verdict::Subcritical: return "subcritical";
        case Verdict::Critical: return "critical";
        default: return "indeterminate";
    }
}

NodeSequence gen_power_nodes(double p, double a, int count) {
    if (!(p > 1.0)) throw ParameterError("gen_power_nodes: p must exceed 1");
    if (!(a > 0.0)) throw ParameterError("gen_power_nodes: a must be positive");
    if (count < 1) throw ParameterError("gen_power_nodes: count must be >= 1");
    std::vector<double> pts(2 * count);
    for (int j = 1; j <= count; ++j) {
        const double v = std::pow(p * a * j / 2.0, 1.0 / p);
        pts[count + j - 1] = v;
        pts[count - j] = -v;
    }
    return NodeSequence::make(std::move(pts), p, std::pow(p * a * count / 2.0, 1.0 / p));
}

namespace {

// Gap statistics |left-in-modulus-relevant endpoint|^{p-1} * gap for one side,
// ordered inner to outer; entry i covers the gap whose endpoints are both
// positive (resp. both negative).
std::vector<double> side_gap_stats(const NodeSequence& seq, bool positive) {
    const double pm1 = seq.exponent - 1.0;
    std::vector<double> stats;
    const auto& pts = seq.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double lo = pts[i], hi = pts[i + 1];
        if (positive && lo > 0.0)
            stats.push_back(std::pow(std::abs(lo), pm1) * (hi - lo));
        else if (!positive && hi < 0.0)
            stats.push_back(std::pow(std::abs(hi), pm1) * (hi - lo));
    }
    if (!positive) std::reverse(stats.begin(), stats.end()); // inner to outer
    return stats;
}

struct TailStats {
    double sup = 0.0;
    double inf = 0.0;
};

TailStats tail_stats(const NodeSequence& seq, double tail_fraction) {
    TailStats out{0.0, std::numeric_limits<double>::infinity()};
    for (bool positive : {true, false}) {
        auto stats = side_gap_stats(seq, positive);
        if (stats.size() < 2)
            throw InsufficientDataError("classify_pair: too few gaps on one side");
        const std::size_t n_tail =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(stats.size() * tail_fraction)));
        for (std::size_t i = stats.size() - n_tail; i < stats.size(); ++i) {
            out.sup = std::max(out.sup, stats[i]);
            out.inf = std::min(out.inf, stats[i]);
        }
    }
    return out;
}

} // namespace

PairClassification classify_pair(const NodeSequence& lambda, const NodeSequence& mu,
                                 double tail_fraction, double band) {
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw ParameterError("classify_pair: tail_fraction must lie in (0,1)");
    const double p = lambda.exponent, q = mu.exponent;
    if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw ParameterError("classify_pair: exponents must satisfy 1/p + 1/q = 1");
    auto count_side = [](const NodeSequence& s, bool pos) {
        std::size_t n = 0;
        for (double v : s.points) n += pos ? (v > 0.0) : (v < 0.0);
        return n;
    };
    for (const auto* s : {&lambda, &mu})
        if (count_side(*s, true) < 20 || count_side(*s, false) < 20)
            throw InsufficientDataError("classify_pair: need >= 20 points per side");

    const TailStats tl = tail_stats(lambda, tail_fraction);
    const TailStats tm = tail_stats(mu, tail_fraction);

    PairClassification out;
    out.sup_combined = std::pow(tl.sup, 1.0 / p) * std::pow(tm.sup, 1.0 / q);
    out.inf_combined = std::pow(tl.inf, 1.0 / p) * std::pow(tm.inf, 1.0 / q);

    const double half = 0.5;
    if (out.sup_combined < half - band) {
        out.verdict = Verdict::Supercritical;
        out.a_lambda = tl.sup;
        out.a_mu = tm.sup;
        out.combined = out.sup_combined;
    } else if (out.inf_combined > half + band) {
        out.verdict = Verdict::Subcritical;
        out.a_lambda = tl.inf;
        out.a_mu = tm.inf;
        out.combined = out.inf_combined;
    } else if (std::abs(out.sup_combined - half) <= band &&
               std::abs(out.inf_combined - half) <= band) {
        out.verdict = Verdict::Critical;
        out.a_lambda = tl.sup;
        out.a_mu = tm.sup;
        out.combined = out.sup_combined;
    } else {
        out.verdict = Verdict::Indeterminate;
        out.a_lambda = tl.sup;
        out.a_mu = tm.sup;
        out.combined = out.sup_combined;
    }
    return out;
}

SeparationResult is_p_separated(const NodeSequence& seq) {
    const auto& pts = seq.points;
    if (pts.size() < 2)
        throw InsufficientDataError("is_p_separated: need at least 2 points");
    const double pm1 = seq.exponent - 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double m = std::min(std::abs(pts[i]), std::abs(pts[i + 1]));
        best = std::min(best, (pts[i + 1] - pts[i]) * std::pow(1.0 + m, pm1));
    }
    return SeparationResult{best > 0.0, best};
}

bool is_l_dense(const NodeSequence& seq, double l, Interval window) {
    if (!(l > 0.0)) throw ParameterError("is_l_dense: l must be positive");
    if (seq.points.empty() || window.lo < seq.points.front() ||
        window.hi > seq.points.back())
        throw RangeError("is_l_dense: window outside the represented range");
    const auto& pts = seq.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const bool intersects = pts[i + 1] > window.lo && pts[i] < window.hi;
        if (intersects && pts[i + 1] - pts[i] > l) return false;
    }
    return true;
}

NodeSequence thin_to_separated(const NodeSequence& seq, double delta) {
    if (!(delta > 0.0)) throw ParameterError("thin_to_separated: delta must be positive");
    const double pm1 = seq.exponent - 1.0;

    // per half-line, walking outward from the innermost element
    std::vector<double> pos, neg_abs;
    for (double v : seq.points)
        (v > 0.0 ? pos : neg_abs).push_back(v > 0.0 ? v : -v);
    std::sort(neg_abs.begin(), neg_abs.end());

    auto thin_half = [&](const std::vector<double>& half) {
        std::vector<double> kept;
        for (double v : half) {
            if (kept.empty() ||
                std::pow(kept.back(), pm1) * (v - kept.back()) >= delta)
                kept.push_back(v);
        }
        return kept;
    };
    std::vector<double> kp = thin_half(pos), kn = thin_half(neg_abs);

    // the straddling pair must satisfy the separation too
    while (!kp.empty() && !kn.empty()) {
        const double gap = kp.front() + kn.front();
        const double m = std::min(kp.front(), kn.front());
        if (gap * std::pow(1.0 + m, pm1) >= delta) break;
        if (kp.front() < kn.front())
            kp.erase(kp.begin());
        else
            kn.erase(kn.begin());
    }

    std::vector<double> out;
    for (auto it = kn.rbegin(); it != kn.rend(); ++it) out.push_back(-*it);
    bool had_zero = std::find(seq.points.begin(), seq.points.end(), 0.0) != seq.points.end();
    if (had_zero) out.push_back(0.0);
    for (double v : kp) out.push_back(v);
    return NodeSequence::make(std::move(out), seq.exponent, seq.truncation_radius);
}

NodeSequence smooth_enlarge(const NodeSequence& seq, double density, double r_max) {
    if (!(density > 0.0)) throw ParameterError("smooth_enlarge: density must be positive");
    for (double v : seq.points)
        if (v <= 0.0) throw RangeError("smooth_enlarge: input must be a positive half-line");
    const double p = seq.exponent;
    if (r_max <= 0.0) r_max = seq.truncation_radius;
    const double t_max = std::pow(r_max, p);
    const long n_cells = static_cast<long>(std::ceil(t_max * density));

    std::vector<char> occupied(n_cells, 0);
    for (double v : seq.points) {
        const long c = static_cast<long>(std::floor(std::pow(v, p) * density));
        if (c >= 0 && c < n_cells) occupied[c] = 1;
    }
    std::vector<double> pts(seq.points);
    for (long c = 0; c < n_cells; ++c)
        if (!occupied[c]) pts.push_back(std::pow((c + 0.5) / density, 1.0 / p));
    std::sort(pts.begin(), pts.end());
    return NodeSequence::make(std::move(pts), p, std::max(r_max, seq.truncation_radius));
}

UniformSupercritResult is_uniformly_supercritical(const NodeSequence& lambda,
                                                  const NodeSequence& mu) {
    if (std::abs(lambda.exponent - 2.0) > 1e-12 || std::abs(mu.exponent - 2.0) > 1e-12)
        throw ParameterError("is_uniformly_supercritical: stated for p = q = 2 only");
    double sup = 0.0;
    for (const auto* s : {&lambda, &mu}) {
        const auto& pts = s->points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double m = std::max(std::abs(pts[i]), std::abs(pts[i + 1]));
            sup = std::max(sup, m * (pts[i + 1] - pts[i]));
        }
    }
    return UniformSupercritResult{sup < 0.5, sup};
}

} // namespace fpairs
