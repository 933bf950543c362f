#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fpairs/constants.hpp"
#include "fpairs/spectral.hpp"

using namespace fpairs;

namespace {

const Grid kGrid = Grid::make(12.0, 4096);

GridFunction gaussian(const Grid& g, double shift = 0.0) {
    std::vector<cplx> v(g.size);
    for (int k = 0; k < g.size; ++k) {
        const double x = g.x(k) - shift;
        v[k] = std::exp(-constants::pi * x * x);
    }
    return fourier_transform(GridFunction::from_space(g, std::move(v)));
}

double linf_freq_vs(const GridFunction& f, auto&& expected) {
    double worst = 0.0;
    for (int m = 0; m < f.grid().size; ++m)
        worst = std::max(worst, std::abs(f.freq()[m] - expected(f.grid().xi(m))));
    return worst;
}

} // namespace

TEST_CASE("grid geometry") {
    CHECK(kGrid.dx * kGrid.dxi * kGrid.size == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kGrid.x(0) == -12.0);
    CHECK(kGrid.xi(0) == -kGrid.xi_half_width);
    CHECK_THROWS_AS(Grid::make(12.0, 1000), ParameterError);
    CHECK_THROWS_AS(Grid::make(-1.0, 1024), ParameterError);
}

TEST_CASE("gaussian is self-dual") {
    const GridFunction g = gaussian(kGrid);
    const double dev = linf_freq_vs(
        g, [](double xi) { return std::exp(-constants::pi * xi * xi); });
    CHECK(dev <= 1e-10);
}

TEST_CASE("zero transforms to zero") {
    std::vector<cplx> v(kGrid.size, cplx{});
    const GridFunction f = fourier_transform(GridFunction::from_space(kGrid, v));
    for (const auto& z : f.freq()) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("shift-modulation law") {
    const GridFunction g = gaussian(kGrid, 1.0);
    const double dev = linf_freq_vs(g, [](double xi) {
        return std::exp(cplx(0.0, -2.0 * constants::pi * xi)) *
               std::exp(-constants::pi * xi * xi);
    });
    CHECK(dev <= 1e-9);
}

TEST_CASE("plancherel and round trip") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    std::vector<cplx> coef(11);
    for (auto& c : coef) c = cplx(dist(rng), dist(rng));
    std::vector<cplx> v(kGrid.size);
    for (int k = 0; k < kGrid.size; ++k) {
        const double x = kGrid.x(k);
        cplx trig{};
        for (int j = 0; j < 11; ++j)
            trig += coef[j] * std::exp(cplx(0.0, 2.0 * constants::pi * (j - 5) * x / 8.0));
        v[k] = trig * std::exp(-0.4 * x * x);
    }
    const GridFunction f = fourier_transform(GridFunction::from_space(kGrid, v));

    double space = 0.0, freq = 0.0;
    for (const auto& z : f.space()) space += std::norm(z);
    for (const auto& z : f.freq()) freq += std::norm(z);
    space *= kGrid.dx;
    freq *= kGrid.dxi;
    CHECK(std::abs(space - freq) <= 1e-10 * space);

    const GridFunction back = inverse_transform(GridFunction::from_freq(kGrid, f.freq()));
    double num = 0.0, den = 0.0;
    for (int k = 0; k < kGrid.size; ++k) {
        num += std::norm(back.space()[k] - v[k]);
        den += std::norm(v[k]);
    }
    CHECK(std::sqrt(num / den) <= 1e-12);
}

TEST_CASE("aliasing is detected") {
    std::vector<cplx> v(kGrid.size, cplx(1.0, 0.0)); // constant: boundary-heavy
    CHECK_THROWS_AS(fourier_transform(GridFunction::from_space(kGrid, v)), AliasingError);
}

TEST_CASE("hermite basis") {
    const auto h = hermite_basis(20, kGrid);

    SUBCASE("h0 matches the closed form and has unit norm") {
        for (int k = 0; k < kGrid.size; k += 97) {
            const double x = kGrid.x(k);
            CHECK(std::abs(h[0].space()[k] -
                           std::pow(2.0, 0.25) * std::exp(-constants::pi * x * x)) <= 1e-10);
        }
        CHECK(l2_norm_sq(h[0]) == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("eigenrelation hhat_n = (-i)^n h_n for n <= 20") {
        const auto at_xi = hermite_values(20, kGrid.xi_points());
        for (int n = 0; n <= 20; ++n) {
            const cplx factor = std::pow(cplx(0.0, -1.0), n);
            double dev2 = 0.0;
            for (int m = 0; m < kGrid.size; ++m)
                dev2 += std::norm(h[n].freq()[m] - factor * at_xi[n][m]);
            CHECK(std::sqrt(dev2 * kGrid.dxi) <= 1e-8);
        }
    }

    SUBCASE("orthonormality") {
        for (int a = 0; a <= 20; a += 5)
            for (int b = a; b <= 20; b += 5) {
                cplx ip{};
                for (int k = 0; k < kGrid.size; ++k)
                    ip += std::conj(h[a].space()[k]) * h[b].space()[k];
                ip *= kGrid.dx;
                CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-9);
            }
    }

    SUBCASE("fourier_transform(h1) = -i h1, dense quadrature oracle") {
        const auto at_xi = hermite_values(1, kGrid.xi_points());
        double dev = 0.0;
        for (int m = 0; m < kGrid.size; ++m)
            dev = std::max(dev, std::abs(h[1].freq()[m] - cplx(0.0, -1.0) * at_xi[1][m]));
        CHECK(dev <= 1e-9);
    }
}

TEST_CASE("sobolev norms on the gaussian") {
    const GridFunction g = gaussian(kGrid);
    // t = 0: 2 ||f||_2^2 = sqrt(2)
    CHECK(sobolev_norm_sq(g, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    // t = 1: int (1+xi^2) e^{-2 pi xi^2} = 2^{-1/2} (1 + 1/(4 pi))
    const double expected = std::pow(2.0, -0.5) * (1.0 + 1.0 / (4.0 * constants::pi));
    CHECK(sobolev_norm_sq(g, 1.0) == doctest::Approx(expected).epsilon(1e-8));
    CHECK(sobolev_norm_sq(GridFunction::from_both(
              kGrid, std::vector<cplx>(kGrid.size), std::vector<cplx>(kGrid.size)),
                          1.0) == 0.0);
}

TEST_CASE("hspq norm") {
    const GridFunction g = gaussian(kGrid);
    const SpaceParams sp = SpaceParams::make(0.5, 2.0, 2.0);
    const double expected =
        2.0 * std::pow(2.0, -0.5) * (1.0 + 1.0 / (4.0 * constants::pi));
    CHECK(hspq_norm_sq(g, sp) == doctest::Approx(expected).epsilon(1e-8));

    SUBCASE("homogeneity") {
        const GridFunction g3 = g.scaled(cplx(3.0, 0.0));
        CHECK(hspq_norm_sq(g3, sp) ==
              doctest::Approx(9.0 * hspq_norm_sq(g, sp)).epsilon(1e-12));
    }

    SUBCASE("domination: ||f||_H1 <= ||f||_H <= sqrt(2) ||f||_{s,p,q}") {
        const auto hs = hermite_basis(12, kGrid);
        const SpaceParams s34 = SpaceParams::make(0.75, 2.0, 2.0);
        for (const auto& f : hs) {
            const double h1 = sobolev_norm_sq(f, 1.0);
            const double hh = hspq_norm_sq(f, SpaceParams::make(0.5, 2.0, 2.0));
            const double hspq = hspq_norm_sq(f, s34);
            CHECK(h1 <= hh * (1.0 + 1e-12));
            CHECK(hh <= 2.0 * hspq * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("heisenberg inequality on the corpus") {
    const auto hs = hermite_basis(16, kGrid);
    for (const auto& f : hs) {
        double x2 = 0.0, xi2 = 0.0, l2 = 0.0;
        for (int k = 0; k < kGrid.size; ++k) {
            x2 += kGrid.x(k) * kGrid.x(k) * std::norm(f.space()[k]);
            xi2 += kGrid.xi(k) * kGrid.xi(k) * std::norm(f.freq()[k]);
            l2 += std::norm(f.space()[k]);
        }
        x2 *= kGrid.dx;
        xi2 *= kGrid.dxi;
        l2 *= kGrid.dx;
        CHECK(l2 / (2.0 * constants::pi) <= (x2 + xi2) * (1.0 + 1e-8));
    }
}

TEST_CASE("point evaluation") {
    const GridFunction g = gaussian(kGrid);
    CHECK(std::abs(point_eval(g, 0.0) - 1.0) <= 1e-9);
    CHECK(std::abs(point_eval(g, 1.7) - std::exp(-constants::pi * 1.7 * 1.7)) <= 1e-9);
    CHECK_THROWS_AS(point_eval(g, 12.5), RangeError);

    const auto h = hermite_basis(1, kGrid);
    CHECK(std::abs(point_eval(h[1], 0.0)) <= 1e-10);

    // |f(x)| <= sqrt(pi) ||f||_{H_1}
    const double bound = std::sqrt(constants::pi * sobolev_norm_sq(g, 1.0));
    CHECK(std::abs(point_eval(g, 0.3)) <= bound + 1e-8);
}

TEST_CASE("gelfand-shilov diagnostic") {
    const GridFunction g = gaussian(kGrid);
    // |g|^2 e^{pi x^2} = e^{-pi x^2}: both integrals equal 1
    const GsDiagnostic d = gelfand_shilov_diagnostic(g, 2.0, 2.0, constants::pi);
    CHECK(!d.space_diverged);
    CHECK(!d.freq_diverged);
    CHECK(d.space_integral == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(d.freq_integral == doctest::Approx(1.0).epsilon(1e-8));

    const GsDiagnostic bad = gelfand_shilov_diagnostic(g, 2.0, 2.0, 4.0 * constants::pi);
    CHECK(bad.space_diverged);

    std::vector<cplx> zero(kGrid.size, cplx{});
    const GsDiagnostic z = gelfand_shilov_diagnostic(
        GridFunction::from_both(kGrid, zero, zero), 2.0, 2.0, 1.0);
    CHECK(z.space_integral == 0.0);
    CHECK(z.freq_integral == 0.0);
}

TEST_CASE("spectral derivative matches the closed form") {
    const GridFunction g = gaussian(kGrid);
    const GridFunction dg = spectral_derivative(g);
    double worst = 0.0;
    for (int k = 0; k < kGrid.size; k += 53) {
        const double x = kGrid.x(k);
        const double expected = -2.0 * constants::pi * x * std::exp(-constants::pi * x * x);
        worst = std::max(worst, std::abs(dg.space()[k] - expected));
    }
    CHECK(worst <= 1e-8);
}
