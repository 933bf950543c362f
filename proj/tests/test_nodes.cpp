#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpairs/nodes.hpp"

using namespace fpairs;

namespace {

NodeSequence integers(int lo, int hi) {
    std::vector<double> pts;
    for (int k = lo; k <= hi; ++k) pts.push_back(k);
    return NodeSequence::make(std::move(pts), 2.0, std::max(std::abs(lo), std::abs(hi)));
}

NodeSequence dilated(const NodeSequence& s, double t) {
    std::vector<double> pts;
    for (double v : s.points) pts.push_back(t * v);
    if (t < 0) std::reverse(pts.begin(), pts.end());
    return NodeSequence::make(std::move(pts), s.exponent,
                              std::abs(t) * s.truncation_radius);
}

} // namespace

TEST_CASE("gen_power_nodes basics") {
    SUBCASE("p=2, a=1, count=3 gives the square-root pattern") {
        const NodeSequence s = gen_power_nodes(2.0, 1.0, 3);
        REQUIRE(s.points.size() == 6);
        const double expect[] = {-std::sqrt(3.0), -std::sqrt(2.0), -1.0,
                                 1.0, std::sqrt(2.0), std::sqrt(3.0)};
        for (int i = 0; i < 6; ++i)
            CHECK(s.points[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    }
    SUBCASE("p=2, a=0.9, count=1") {
        const NodeSequence s = gen_power_nodes(2.0, 0.9, 1);
        REQUIRE(s.points.size() == 2);
        CHECK(s.points[1] == doctest::Approx(std::sqrt(0.9)).epsilon(1e-15));
        CHECK(s.points[0] == doctest::Approx(-std::sqrt(0.9)).epsilon(1e-15));
    }
    SUBCASE("tail gap statistic approaches a/2 (p = 3)") {
        const NodeSequence s = gen_power_nodes(3.0, 1.0, 50);
        // oracle: closed-form gap statistic |lambda_j|^2 (lambda_{j+1}-lambda_j)
        for (int j = 30; j < 50; ++j) {
            const double lj = std::pow(3.0 * j / 2.0, 1.0 / 3.0);
            const double lj1 = std::pow(3.0 * (j + 1) / 2.0, 1.0 / 3.0);
            const double stat = lj * lj * (lj1 - lj);
            CHECK(stat >= 0.45);
            CHECK(stat <= 0.55);
        }
    }
    SUBCASE("gap statistic convergence band for count >= 200") {
        for (double p : {2.0, 3.0}) {
            const NodeSequence s = gen_power_nodes(p, 1.0, 240);
            const auto& pts = s.points;
            const std::size_t n = pts.size();
            double lo = 1e9, hi = 0.0;
            for (std::size_t i = n - n / 10; i + 1 < n; ++i) {
                const double stat =
                    std::pow(std::abs(pts[i]), p - 1.0) * (pts[i + 1] - pts[i]);
                lo = std::min(lo, stat);
                hi = std::max(hi, stat);
            }
            CHECK(lo >= 0.5 - 0.02);
            CHECK(hi <= 0.5 + 0.02);
        }
    }
    CHECK_THROWS_AS(gen_power_nodes(1.0, 1.0, 5), ParameterError);
    CHECK_THROWS_AS(gen_power_nodes(2.0, -1.0, 5), ParameterError);
}

TEST_CASE("classify_pair") {
    SUBCASE("a = 0.9 supercritical with combined near 0.45") {
        const NodeSequence s = gen_power_nodes(2.0, 0.9, 200);
        const PairClassification c = classify_pair(s, s);
        CHECK(c.verdict == Verdict::Supercritical);
        CHECK(c.combined == doctest::Approx(0.45).epsilon(0.01));
    }
    SUBCASE("a = 1.2 subcritical with combined near 0.6") {
        const NodeSequence s = gen_power_nodes(2.0, 1.2, 200);
        const PairClassification c = classify_pair(s, s);
        CHECK(c.verdict == Verdict::Subcritical);
        CHECK(c.combined == doctest::Approx(0.6).epsilon(0.01));
    }
    SUBCASE("a = 1 lands in the critical band") {
        const NodeSequence s = gen_power_nodes(2.0, 1.0, 200);
        const PairClassification c = classify_pair(s, s);
        const bool ok =
            c.verdict == Verdict::Critical || c.verdict == Verdict::Indeterminate;
        CHECK(ok);
    }
    SUBCASE("dilation invariance, p = q = 2, t = 3") {
        const NodeSequence lam = gen_power_nodes(2.0, 1.2, 200);
        const PairClassification c0 = classify_pair(lam, lam);
        const PairClassification c1 = classify_pair(dilated(lam, 3.0), dilated(lam, 1.0 / 3.0));
        CHECK(c0.verdict == c1.verdict);
        CHECK(std::abs(c0.combined - c1.combined) <= 1e-10);
    }
    SUBCASE("dilation invariance, p = 3") {
        const NodeSequence lam = gen_power_nodes(3.0, 1.2, 200);
        const NodeSequence mu = gen_power_nodes(1.5, 1.2, 200);
        const PairClassification c0 = classify_pair(lam, mu);
        const PairClassification c1 =
            classify_pair(dilated(lam, 2.0), dilated(mu, 0.5));
        CHECK(c0.verdict == c1.verdict);
        CHECK(std::abs(c0.combined - c1.combined) <= 1e-10);
    }
    SUBCASE("exponent mismatch and short input raise") {
        const NodeSequence s2 = gen_power_nodes(2.0, 1.0, 100);
        const NodeSequence s3 = gen_power_nodes(3.0, 1.0, 100);
        CHECK_THROWS_AS(classify_pair(s2, s3), ParameterError);
        const NodeSequence tiny = gen_power_nodes(2.0, 1.0, 10);
        CHECK_THROWS_AS(classify_pair(tiny, tiny), InsufficientDataError);
    }
}

TEST_CASE("is_p_separated") {
    SUBCASE("generated nodes, brute-force oracle") {
        const NodeSequence s = gen_power_nodes(2.0, 1.0, 100);
        const SeparationResult r = is_p_separated(s);
        CHECK(r.flag);
        CHECK(r.c_best >= 0.4);
        // oracle: explicit minimum over the gaps
        double best = 1e300;
        for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
            const double m = std::min(std::abs(s.points[i]), std::abs(s.points[i + 1]));
            best = std::min(best, (s.points[i + 1] - s.points[i]) * (1.0 + m));
        }
        CHECK(r.c_best == doctest::Approx(best).epsilon(1e-14));
    }
    SUBCASE("single gap {0, 1}") {
        const NodeSequence s = NodeSequence::make({0.0, 1.0}, 2.0, 1.0);
        CHECK(is_p_separated(s).c_best == doctest::Approx(1.0));
    }
    SUBCASE("tiny gap dominates") {
        const NodeSequence s = NodeSequence::make({0.0, 1e-9, 1.0}, 2.0, 1.0);
        CHECK(is_p_separated(s).c_best == doctest::Approx(1e-9).epsilon(1e-6));
    }
}

TEST_CASE("is_l_dense") {
    const NodeSequence z = integers(-10, 10);
    CHECK(is_l_dense(z, 1.0, {-9.0, 9.0}));
    CHECK(!is_l_dense(z, 0.9, {-9.0, 9.0}));
    CHECK_THROWS_AS(is_l_dense(z, 1.0, {-11.0, 9.0}), RangeError);

    // gap near x is about 0.45/x there; all gaps in [20, 25] are below 0.05
    // (count 800 so the window is inside the represented range)
    const NodeSequence s = gen_power_nodes(2.0, 0.9, 800);
    CHECK(is_l_dense(s, 0.05, {20.0, 25.0}));
}

TEST_CASE("thin_to_separated") {
    SUBCASE("already separated input is unchanged") {
        const NodeSequence s = NodeSequence::make({-4.0, -2.0, 2.0, 4.0}, 2.0, 4.0);
        const NodeSequence t = thin_to_separated(s, 0.05);
        CHECK(t.points == s.points);
    }
    SUBCASE("near-duplicate is dropped") {
        const NodeSequence s =
            NodeSequence::make({-5.0, 1.0, 5.0, 5.0001, 7.0}, 2.0, 7.0);
        const NodeSequence t = thin_to_separated(s, 0.01);
        for (double v : t.points) CHECK(v != doctest::Approx(5.0001).epsilon(1e-9));
        CHECK(std::find(t.points.begin(), t.points.end(), 5.0) != t.points.end());
    }
    SUBCASE("thinned supercritical set stays supercritical and separated") {
        const NodeSequence s = gen_power_nodes(2.0, 0.8, 300);
        const NodeSequence t = thin_to_separated(s, 0.05);
        // subset property
        for (double v : t.points)
            CHECK(std::find(s.points.begin(), s.points.end(), v) != s.points.end());
        const SeparationResult sep = is_p_separated(t);
        CHECK(sep.flag);
        CHECK(sep.c_best >= 0.05 * (1.0 - 1e-12));
        const PairClassification c = classify_pair(t, t);
        CHECK(c.verdict == Verdict::Supercritical);
        CHECK(c.combined <= 0.45 + 1e-9);
    }
}

TEST_CASE("smooth_enlarge") {
    SUBCASE("empty-cell centers only") {
        // seed far outside [0, R]: every cell in range is empty
        const NodeSequence seed = NodeSequence::make({100.0}, 2.0, 3.0);
        const NodeSequence e = smooth_enlarge(seed, 1.0, 3.0);
        // cells k = 0..8 in t-space, centers (k + 1/2)
        int idx = 0;
        for (double v : e.points) {
            if (v > 3.5) break; // the seed point itself
            CHECK(v == doctest::Approx(std::sqrt(idx + 0.5)).epsilon(1e-12));
            ++idx;
        }
        CHECK(idx == 9);
    }
    SUBCASE("density statistic approaches D") {
        std::vector<double> pos;
        const NodeSequence full = gen_power_nodes(2.0, 1.2, 200);
        for (double v : full.points)
            if (v > 0) pos.push_back(v);
        const NodeSequence half =
            NodeSequence::make(std::move(pos), 2.0, full.truncation_radius);
        const NodeSequence e = smooth_enlarge(half, 0.95);
        for (double r : {8.0, 10.0, 12.0, 14.0}) {
            long n = 0;
            for (double v : e.points) n += v <= r;
            CHECK(std::abs(n - 0.95 * r * r) <= 2.0);
        }
        // superset property
        for (double v : half.points)
            CHECK(std::find(e.points.begin(), e.points.end(), v) != e.points.end());
    }
    SUBCASE("a point exactly at a cell center blocks the insertion") {
        const double center = std::sqrt(0.5);
        const NodeSequence seed = NodeSequence::make({center}, 2.0, 1.0);
        const NodeSequence e = smooth_enlarge(seed, 1.0, 1.0);
        long in_first_cell = 0;
        for (double v : e.points) in_first_cell += v * v < 1.0;
        CHECK(in_first_cell == 1);
    }
    CHECK_THROWS_AS(smooth_enlarge(NodeSequence::make({-1.0, 2.0}, 2.0, 2.0), 1.0),
                    RangeError);
}

TEST_CASE("is_uniformly_supercritical") {
    SUBCASE("two points only") {
        const NodeSequence s = NodeSequence::make({-1.0, 1.0}, 2.0, 1.0);
        const UniformSupercritResult r = is_uniformly_supercritical(s, s);
        CHECK(r.sup_stat == doctest::Approx(2.0));
        CHECK(!r.flag);
    }
    SUBCASE("a = 0.8 with the literal {+-0.1} fill still fails at the first gap") {
        // the gap [0.1, sqrt(0.8)] has max-endpoint statistic about 0.71
        std::vector<double> pts = gen_power_nodes(2.0, 0.8, 100).points;
        pts.insert(std::lower_bound(pts.begin(), pts.end(), -0.1), -0.1);
        pts.insert(std::lower_bound(pts.begin(), pts.end(), 0.1), 0.1);
        const NodeSequence s = NodeSequence::make(std::move(pts), 2.0, 100.0);
        const UniformSupercritResult r = is_uniformly_supercritical(s, s);
        CHECK(r.sup_stat == doctest::Approx(0.71).epsilon(0.01));
        CHECK(!r.flag);
    }
    SUBCASE("a = 0.8 with a denser central fill passes") {
        std::vector<double> pts = gen_power_nodes(2.0, 0.8, 100).points;
        for (double v : {0.1, 0.45, 0.8}) {
            pts.insert(std::lower_bound(pts.begin(), pts.end(), -v), -v);
            pts.insert(std::lower_bound(pts.begin(), pts.end(), v), v);
        }
        std::sort(pts.begin(), pts.end());
        const NodeSequence s = NodeSequence::make(std::move(pts), 2.0, 100.0);
        const UniformSupercritResult r = is_uniformly_supercritical(s, s);
        CHECK(r.flag);
        CHECK(r.sup_stat < 0.5);
    }
    SUBCASE("a = 1.2 fails") {
        const NodeSequence s = gen_power_nodes(2.0, 1.2, 100);
        CHECK(!is_uniformly_supercritical(s, s).flag);
    }
    SUBCASE("rejects p != 2") {
        const NodeSequence s = gen_power_nodes(3.0, 1.0, 30);
        CHECK_THROWS_AS(is_uniformly_supercritical(s, s), ParameterError);
    }
}
