#pragma once

#include <numbers>

namespace fpairs::constants {

inline constexpr double pi = std::numbers::pi;

// Frozen constants for the inequality checks. Each value is assembled from
// the proof it backs; the derivation is recorded here and the tests compare
// against these exact expressions.

/// Sampled trace bound, single-exponent case (theta = 1):
/// apply the trace bound (1/d)|f(g)|^2 <= (2/d^2) int_g^{g+d}|f|^2
/// + (2/3) int_g^{g+d}|f'|^2 on the disjoint intervals [g, g+d], d = delta,
/// then sum and use int|f'|^2 = 4 pi^2 int xi^2 |fhat|^2:
///   delta sum |f(g)|^2 <= 2 int|f|^2 + (8 pi^2/3) delta^2 int xi^2|fhat|^2.
/// Single constant: max(2, 8 pi^2 / 3) = 8 pi^2 / 3.
inline constexpr double trace_general_theta1 = 8.0 * pi * pi / 3.0;

/// General theta >= 1 doubles the constant:
/// int|f|^2 + d^2 int xi^2|fhat|^2 <= 2 (int|f|^2 + d^{2 theta} int xi^{2 theta}|fhat|^2)
/// for d <= gap lengths (1 + u <= 2(1 + u^theta) with u = (d xi)^2).
inline constexpr double trace_general_C = 2.0 * trace_general_theta1;

/// Sampled Poincare-Wirtinger constant C_eps, from summing the stable PW
/// inequality over the gaps of an l-dense set with l = (1-eps)/(2t):
/// each node is an endpoint of two gaps, so the endpoint terms double:
///   C_eps = 2 (1 + 1/eps)(1 - eps).
inline double wirt2_c_eps(double eps) { return 2.0 * (1.0 + 1.0 / eps) * (1.0 - eps); }

/// Upper frame bound per node set for a p-separated sequence with separation
/// constant c (p = q = 2 case): apply the trace bound on [lam, lam + c/(1+|lam|)],
/// use (1+|lam|)^2 <= 2(1+x^2) there, allow each gap to serve two endpoints:
///   sum (1+|lam|)|f(lam)|^2 <= (8/c) int (1+x^2)|f|^2 + (16 pi^2 c/3) int xi^2 |fhat|^2
/// and both integrals are dominated by the square H-norm.
inline double frame_upper_per_side(double c) { return 8.0 / c + 16.0 * pi * pi * c / 3.0; }

/// Scan envelope caps for the Levin product bounds: the two-sided estimate
/// |log|S(z)| - K(z)| <= C [log(2+|z|) + log(1 + 1/d(z))] is checked with a
/// frozen C plus an additive O(1) allowance.
inline constexpr double levin_scan_C_cap = 10.0;
inline constexpr double levin_scan_A_cap = 5.0;

} // namespace fpairs::constants
