#pragma once

#include <string>
#include <vector>

#include "fpairs/grid.hpp"
#include "fpairs/nodes.hpp"
#include "fpairs/spectral.hpp"

namespace fpairs {

struct CheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const { return rhs - lhs; }
};

/// Restricted quadrature of |values|^2 over [a, b], midpoint cells with
/// linear fractions at the interval endpoints.
double restricted_l2_sq(const GridFunction& f, double a, double b);
double restricted_l2_sq_values(const std::vector<cplx>& values, const Grid& g,
                               double a, double b);

/// Stable Poincare-Wirtinger inequality on [a, b]:
/// int_a^b |f|^2 <= (1+eps)((b-a)/pi)^2 int_a^b |f'|^2
///                 + (1+1/eps)(b-a)(|f(a)|^2 + |f(b)|^2).
/// rhs_scale multiplies the whole right-hand side (negative-control knob).
CheckResult check_pw_stable(const GridFunction& f, double a, double b, double eps,
                            double rhs_scale = 1.0);

/// Trace bound: |f(a)|^2/(b-a) <= 2 (b-a)^{-2} int_a^b |f|^2 + (2/3) int_a^b |f'|^2.
CheckResult check_trace(const GridFunction& f, double a, double b,
                        double rhs_scale = 1.0);

/// Sampled trace bound over a delta-separated set:
/// delta sum |f(g)|^2 <= C [ int |f|^2 + delta^{2 theta} int |xi|^{2 theta} |fhat|^2 ]
/// with the frozen C from constants.hpp.
CheckResult check_trace_general(const GridFunction& f, const NodeSequence& gamma,
                                double delta, double theta, double rhs_scale = 1.0);

/// Sampled PW inequality with Phi(u) = u^theta.
/// Part (i) (vanishing = false): Gamma must be (1-eps)/(2t)-dense on the
/// support window; rhs gains C_eps t Phi'(t^2) sum |f(g)|^2.
/// Part (ii) (vanishing = true): Gamma must be (2t)^{-1}-dense and f|_Gamma = 0.
CheckResult check_wirt2(const GridFunction& f, const NodeSequence& gamma, double t,
                        double eps, double theta, bool vanishing,
                        double rhs_scale = 1.0);

struct Violation {
    std::string case_id;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct InequalityReport {
    std::string name;
    long cases_run = 0;
    double worst_slack = 0.0;
    std::vector<Violation> violations;
    double tolerance = 0.0;
    std::vector<std::string> errors; // per-case failures, carried not thrown
};

struct SuiteConfig {
    int hermite_n_max = 20;
    double grid_x = 12.0;
    int grid_n = 4096;
    std::vector<Interval> intervals;     // empty -> defaults
    std::vector<double> eps_values;      // empty -> {0.1, 1, 10}
    std::vector<double> thetas;          // empty -> {1, 2}
    double tolerance = 1e-8;
    double constant_scale = 1.0;         // < 1 is the damaged-constant negative control
    unsigned long long seed = 0;         // reserved for corpus jitter

    static SuiteConfig defaults();
};

InequalityReport run_suite(const std::vector<GridFunction>& corpus,
                           const SuiteConfig& config);

/// Convenience: build the Hermite corpus and run the default suite.
InequalityReport run_default_suite(const SuiteConfig& config);

} // namespace fpairs
