#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpairs/constants.hpp"
#include "fpairs/frames.hpp"

using namespace fpairs;

namespace {

const Grid kGrid = Grid::make(12.0, 4096);
const SpaceParams kParams = SpaceParams::make(0.5, 2.0, 2.0);

FrameModel supercritical_model(double a, int m, int count = 400) {
    const NodeSequence s = gen_power_nodes(2.0, a, count);
    return estimate_frame_bounds(build_sampling_operator(s, s, kParams, kGrid), m);
}

} // namespace

TEST_CASE("sampling operator basics") {
    const NodeSequence s = gen_power_nodes(2.0, 0.8, 400);
    const SamplingOperator op = build_sampling_operator(s, s, kParams, kGrid);

    SUBCASE("nodes are clipped at 0.8 X") {
        for (double v : op.lambda.points) CHECK(std::abs(v) <= 0.8 * kGrid.half_width);
        CHECK(op.clipped_lambda > 0);
        CHECK(op.clipped_lambda ==
              static_cast<int>(s.points.size() - op.lambda.points.size()));
    }
    SUBCASE("weights match the theorem exponents") {
        // s = 1/2, p = 2: squared weight (1 + |lambda|)
        for (std::size_t i = 0; i < op.lambda.points.size(); ++i)
            CHECK(op.lambda_weights[i] * op.lambda_weights[i] ==
                  doctest::Approx(1.0 + std::abs(op.lambda.points[i])).epsilon(1e-12));
        // s = 1, p = 2 at lambda = 3: squared weight 4^3 = 64
        const SpaceParams s1 = SpaceParams::make(1.0, 2.0, 2.0);
        const NodeSequence three = NodeSequence::make({-3.0, 3.0}, 2.0, 3.0);
        const SamplingOperator op3 = build_sampling_operator(three, three, s1, kGrid);
        CHECK(op3.lambda_weights[1] * op3.lambda_weights[1] ==
              doctest::Approx(64.0).epsilon(1e-12));
    }
    SUBCASE("zero function samples to zero") {
        std::vector<cplx> z(kGrid.size, cplx{});
        const auto v = op.apply(GridFunction::from_both(kGrid, z, z));
        CHECK(v.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("inadmissible s rejected") {
        CHECK_THROWS_AS(build_sampling_operator(
                            s, s, SpaceParams::make(0.25, 2.0, 2.0), kGrid),
                        ParameterError);
    }
}

TEST_CASE("frame bounds, supercritical a = 0.8") {
    const FrameModel model = supercritical_model(0.8, 40);
    CHECK(model.A_est >= 1e-4);
    CHECK(model.B_est / model.A_est <= 1e4);
    CHECK(!model.degenerate);
    CHECK(model.A_est <= model.B_est);

    SUBCASE("pencil residuals certify the eigenpairs") {
        const Eigen::MatrixXcd H = model.sample_matrix.adjoint() * model.sample_matrix;
        for (int j : {0, model.m - 1}) {
            const Eigen::VectorXcd v = model.pencil_vectors.col(j);
            const double resid =
                (H * v - model.pencil_values(j) * model.gram * v).norm() /
                (H * v).norm();
            CHECK(resid <= 1e-10);
        }
    }
    SUBCASE("frame sandwich on every basis function") {
        for (int n = 0; n < model.m; n += 7) {
            const double sum = model.sample_matrix.col(n).squaredNorm();
            const double nrm = model.gram(n, n).real();
            CHECK(sum >= model.A_est * nrm * (1.0 - 1e-9));
            CHECK(sum <= model.B_est * nrm * (1.0 + 1e-9));
        }
    }
    SUBCASE("single basis function: 1x1 pencil") {
        const FrameModel one = supercritical_model(0.8, 1);
        const double expected = one.sample_matrix.col(0).squaredNorm() /
                                one.gram(0, 0).real();
        CHECK(one.A_est == doctest::Approx(expected).epsilon(1e-12));
        CHECK(one.B_est == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("subcritical degeneration: A_est collapses as m grows") {
    double prev = -1.0;
    for (int m : {10, 20, 30}) {
        const FrameModel model = supercritical_model(1.2, m);
        if (prev >= 0.0) CHECK(model.A_est <= 0.9 * prev);
        prev = model.A_est;
    }
}

TEST_CASE("adding node rows never decreases A_est") {
    const NodeSequence small = gen_power_nodes(2.0, 0.8, 60);
    const NodeSequence big = gen_power_nodes(2.0, 0.8, 120);
    const int m = 12;
    const FrameModel m_small =
        estimate_frame_bounds(build_sampling_operator(small, small, kParams, kGrid), m);
    const FrameModel m_big =
        estimate_frame_bounds(build_sampling_operator(big, big, kParams, kGrid), m);
    CHECK(m_big.A_est >= m_small.A_est * (1.0 - 1e-12));
}

TEST_CASE("theorem 2A upper bound with the frozen constant") {
    const NodeSequence s = gen_power_nodes(2.0, 0.8, 400);
    const SamplingOperator op = build_sampling_operator(s, s, kParams, kGrid);
    const double c_lam = is_p_separated(op.lambda).c_best;
    const double c_mu = is_p_separated(op.mu).c_best;
    const double B = constants::frame_upper_per_side(c_lam) +
                     constants::frame_upper_per_side(c_mu);
    const auto corpus = hermite_basis(16, kGrid);
    for (const auto& f : corpus) {
        const double sum = op.apply(f).squaredNorm();
        const double nrm = hspq_norm_sq(f, kParams);
        CHECK(sum <= B * nrm * (1.0 + 1e-9));
    }
}

TEST_CASE("interpolation basis and reconstruction") {
    const FrameModel model = supercritical_model(0.8, 40);
    const InterpolationBasis basis = build_interpolation_basis(model);
    const auto h = hermite_basis(4, kGrid);

    auto samples_of = [&](const GridFunction& f) {
        const int nl = basis.lambda_count();
        const int nm = basis.node_count() - nl;
        Eigen::VectorXcd ls(nl), ms(nm);
        for (int i = 0; i < nl; ++i) ls(i) = point_eval(f, basis.lambda_nodes[i]);
        for (int i = 0; i < nm; ++i) ms(i) = point_eval_freq(f, basis.mu_nodes[i]);
        return std::make_pair(ls, ms);
    };

    SUBCASE("norm bound ||a_lambda|| <= ||delta_lambda|| / sqrt(A)") {
        for (int i = 0; i < basis.node_count(); i += 37) {
            const double w = i < basis.lambda_count()
                                 ? std::sqrt(1.0 + std::abs(basis.lambda_nodes[i]))
                                 : std::sqrt(1.0 + std::abs(basis.mu_nodes[i - basis.lambda_count()]));
            CHECK(basis.hspq_norms[i] <= w / std::sqrt(model.A_est) * (1.0 + 1e-9));
        }
    }
    SUBCASE("reconstruct h0 within 1e-6 relative") {
        const auto [ls, ms] = samples_of(h[0]);
        const GridFunction rec = reconstruct(basis, ls, ms);
        double num = 0.0;
        for (int k = 0; k < kGrid.size; ++k)
            num += std::norm(rec.space()[k] - h[0].space()[k]);
        const double rel = std::sqrt(num * kGrid.dx / l2_norm_sq(h[0]));
        CHECK(rel <= 1e-6);
    }
    SUBCASE("reconstruction is linear") {
        const auto [l0, m0] = samples_of(h[0]);
        const auto [l2, m2] = samples_of(h[2]);
        const GridFunction r0 = reconstruct(basis, l0, m0);
        const GridFunction r2 = reconstruct(basis, l2, m2);
        const GridFunction rsum = reconstruct(basis, l0 + l2, m0 + m2);
        double dev = 0.0;
        for (int k = 0; k < kGrid.size; ++k)
            dev = std::max(dev, std::abs(rsum.space()[k] - r0.space()[k] - r2.space()[k]));
        CHECK(dev <= 1e-12);
    }
    SUBCASE("zero samples give the zero function") {
        const Eigen::VectorXcd zl = Eigen::VectorXcd::Zero(basis.lambda_count());
        const Eigen::VectorXcd zm =
            Eigen::VectorXcd::Zero(basis.node_count() - basis.lambda_count());
        const GridFunction rec = reconstruct(basis, zl, zm);
        for (const auto& z : rec.space()) CHECK(std::abs(z) == 0.0);
    }
    SUBCASE("sample-then-reconstruct is idempotent") {
        const auto [l1, m1] = samples_of(h[1]);
        const GridFunction once = reconstruct(basis, l1, m1);
        const auto [l2, m2] = samples_of(once);
        const GridFunction twice = reconstruct(basis, l2, m2);
        double dev = 0.0, scale = 0.0;
        for (int k = 0; k < kGrid.size; ++k) {
            dev = std::max(dev, std::abs(twice.space()[k] - once.space()[k]));
            scale = std::max(scale, std::abs(once.space()[k]));
        }
        CHECK(dev <= 1e-9 * scale);
    }
    SUBCASE("norm growth slope of a_lambda") {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (int i = 0; i < basis.lambda_count(); ++i) {
            const double lam = std::abs(basis.lambda_nodes[i]);
            if (lam < 2.0 || lam > 8.0) continue;
            const double x = std::log(1.0 + lam), y = std::log(basis.hspq_norms[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope <= (kParams.s - 0.5) * kParams.p + 0.5 + 0.1);
    }
    SUBCASE("degenerate frame is refused") {
        const FrameModel bad = supercritical_model(1.2, 40);
        CHECK_THROWS_AS(build_interpolation_basis(bad), DegenerateFrameError);
    }
}

TEST_CASE("duffin-schaeffer row removal") {
    const FrameModel model = supercritical_model(0.8, 24, 200);

    SUBCASE("removing nothing changes nothing") {
        const DsDemoResult r = duffin_schaeffer_demo(model, {});
        CHECK(r.rank_ok);
        CHECK(r.A_after == doctest::Approx(r.A_before).epsilon(1e-12));
    }
    SUBCASE("removing the two central rows keeps a positive bound") {
        // rows nearest zero on the lambda side
        int c0 = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < model.op.lambda.points.size(); ++i)
            if (std::abs(model.op.lambda.points[i]) < best) {
                best = std::abs(model.op.lambda.points[i]);
                c0 = static_cast<int>(i);
            }
        const DsDemoResult r = duffin_schaeffer_demo(model, {c0, c0 + 1});
        CHECK(r.rank_ok);
        CHECK(r.A_after > 0.0);
        CHECK(r.A_after <= r.A_before * (1.0 + 1e-12));
    }
    SUBCASE("rank collapse is reported, not thrown") {
        // tiny model: 3 nodes per side, m = 5 basis functions, rows = 6
        const NodeSequence tiny = NodeSequence::make({-1.2, -0.5, 0.9}, 2.0, 2.0);
        const FrameModel small =
            estimate_frame_bounds(build_sampling_operator(tiny, tiny, kParams, kGrid), 5);
        const DsDemoResult r = duffin_schaeffer_demo(small, {0, 1});
        CHECK(!r.rank_ok);
    }
    SUBCASE("too many removals rejected") {
        CHECK_THROWS_AS(duffin_schaeffer_demo(model, {0, 1, 2, 3, 4, 5}), ParameterError);
    }
}

TEST_CASE("decay-to-schwartz report") {
    const NodeSequence s = gen_power_nodes(2.0, 0.8, 400);
    const auto h = hermite_basis(0, kGrid);

    SUBCASE("gaussian decays faster than every polynomial rate") {
        const DecayReport rep = decay_to_schwartz_check(h[0], s, s, {1.0, 2.0, 4.0, 8.0});
        for (const auto& e : rep.entries) {
            CHECK(e.slope_lambda <= -e.r);
            CHECK(e.slope_mu <= -e.r);
            CHECK(e.slopes_pass);
            CHECK(e.consistent);
        }
    }
    SUBCASE("compact spectrum means slow spatial decay") {
        // fhat = smooth bump => f oscillatory with O(1/x) decay
        std::vector<cplx> fr(kGrid.size);
        for (int m = 0; m < kGrid.size; ++m) {
            const double xi = kGrid.xi(m);
            fr[m] = std::abs(xi) < 1.0 ? std::pow(std::cos(constants::pi * xi / 2.0), 2) : 0.0;
        }
        const GridFunction f = inverse_transform(GridFunction::from_freq(kGrid, fr));
        const DecayReport rep = decay_to_schwartz_check(f, s, s, {1.0, 2.0});
        CHECK(rep.entries[0].slope_lambda == doctest::Approx(-1.0).epsilon(0.35));
        CHECK(!rep.entries[1].slopes_pass); // r = 2 fails
    }
    SUBCASE("zero function is degenerate") {
        std::vector<cplx> z(kGrid.size, cplx{});
        const DecayReport rep = decay_to_schwartz_check(
            GridFunction::from_both(kGrid, z, z), s, s, {1.0});
        CHECK(rep.degenerate);
        CHECK(rep.entries[0].consistent);
    }
    SUBCASE("too few usable nodes") {
        const NodeSequence few = NodeSequence::make({-2.0, -1.5, 1.5, 2.0}, 2.0, 2.0);
        CHECK_THROWS_AS(decay_to_schwartz_check(h[0], few, few, {1.0}),
                        InsufficientDataError);
    }
}
