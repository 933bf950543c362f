#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "fpairs/grid.hpp"
#include "fpairs/nodes.hpp"
#include "fpairs/spectral.hpp"

namespace fpairs {

/// Piecewise p-trigonometric function k with k'' + p^2 k a positive atomic
/// measure: jump angles, masses m_j = k'(theta_j+) - k'(theta_j-), and the
/// per-arc coefficients of k(theta) = a cos(p theta) + b sin(p theta).
struct KpFunction {
    double p = 2.0;
    double alpha = 0.0;   // 2 pi sigma / p
    double beta = 0.0;    // -k(0)
    double sigma = 0.0;
    double s_claim = 0.0; // the scan parameter in (sigma^q, 1)
    double b = 0.0;       // scale parameter, beta = 2 pi s b^{-q} / q
    int doubling = 0;     // k_p(theta) = k_{p'}(2^n theta) for p > 2

    std::vector<double> jump_angles; // in (-pi, pi], counterclockwise
    std::vector<double> masses;

    struct Arc {
        double lo = 0.0, hi = 0.0;
        double a_cos = 0.0, b_sin = 0.0;
    };
    std::vector<Arc> arcs;

    double eval(double theta) const;
    double deriv_plus(double theta) const;
    double deriv_minus(double theta) const;
    /// |sum m_j e^{-i p theta_j}| (zero required for integer p).
    double lindelof_residual() const;
    /// Ray density for the jump at angle theta_j: m_j / (2 pi p).
    double ray_density(std::size_t j) const { return masses[j] / (2.0 * constantspi() * p); }

    static double constantspi();
};

/// Build k_p with alpha = 2 pi sigma / p and beta = 2 pi s b^{-q} / q.
/// s defaults to the midpoint of (sigma^q, 1).
KpFunction build_kp(double p, double sigma, double b, double s = -1.0);

/// Smallest admissible b for the growth-comparison inequality
/// k_p(theta) < 2 pi (b^p/p) sin^p(theta), found by bisection on the scan.
double find_b0(double p, double sigma, double s, int n_angles = 512);

/// Scan margin: min over angles of RHS - LHS of the inequality above.
double kp_claim_margin(const KpFunction& kp, double b, int n_angles = 512);

/// One ray of zeros plus the analytic ideal-lattice tail beyond the listed
/// radii (density D w.r.t. r^p, starting at the counting-consistent edge).
struct ProductRay {
    double theta = 0.0;
    double density = 0.0;
    std::vector<double> radii; // increasing, the listed zeros
    double tail_start_rp = 0.0; // tail begins at r^p = tail_start_rp
};

/// Truncated genus-s Weierstrass product with tail compensation and a
/// stabilizing correction polynomial of degree <= p.
class LevinProduct {
public:
    KpFunction kp;
    int genus = 1;
    double truncation_radius = 0.0; // R: listed zeros satisfy |z| <= R
    std::vector<ProductRay> rays;
    std::vector<cplx> correction; // P(z) = sum c_d z^d, degree <= floor(p)
    double d_sep = 0.0;           // disk-separation constant of the zero set
    double fit_residual = 0.0;

    /// log S(z), including tail series and correction. Branch of the
    /// imaginary part is unnormalized (only e^{log} and Re are meaningful).
    cplx log_eval(cplx z) const;
    /// log of S(z)/(z - zero), the indicated zero's factor removed
    /// analytically; finite at z = zero.
    cplx log_eval_excluding(cplx z, std::size_t ray, std::size_t idx) const;
    /// log S'(zero) (the zero is simple).
    cplx log_derivative(std::size_t ray, std::size_t idx) const;

    cplx tail_term(cplx z) const;
    cplx correction_at(cplx z) const;
    double k_growth(double theta) const { return kp.eval(theta); }
    /// Distance from z to the nearest listed zero.
    double zero_distance(cplx z) const;
    std::optional<std::pair<std::size_t, std::size_t>> find_zero(double value,
                                                                 double tol) const;
};

struct LevinBuildOptions {
    double counting_dev_cap = 2.0;
    double fit_lo = 0.35, fit_hi = 0.75; // fit annulus, fractions of R
    int fit_radii = 8, fit_angles = 12;
    double fit_residual_cap = 6.0; // vs C_cap log envelope
};

LevinProduct build_levin_product(const KpFunction& kp,
                                 const std::vector<NodeSequence>& zero_sets, double R,
                                 const LevinBuildOptions& opts = {});

/// Ideal p-smooth ray: radii ((k+1/2)/D)^{1/p} for k < floor(D R^p).
NodeSequence ideal_smooth_ray(double density, double p, double R);

struct LevinScanEntry {
    double r = 0.0, theta = 0.0;
    double deviation = 0.0; // log|S| - K
};

struct LevinBoundsReport {
    long samples = 0;
    long violations_upper = 0;   // (I)
    long violations_lower = 0;   // (II)
    long violations_deriv = 0;   // (III)
    double C_fit = 0.0;          // envelope constant for |dev| <= C log-envelope
    double log_C_eps = -1e300;   // fitted log C_eps for (I)
    double log_c_eps = 1e300;    // fitted log c_eps for (III)
    std::vector<double> indicator; // per ray, limsup log|S|/r^p proxy (off-ray)
    std::vector<LevinScanEntry> worst;
};

LevinBoundsReport verify_levin_bounds(const LevinProduct& prod, double eps,
                                      int n_radii = 36, int n_angles = 40);

/// Max |log|S_a| - log|S_b|| over off-disk samples of the disk |z| <= radius.
double truncation_shift(const LevinProduct& a, const LevinProduct& b, double radius,
                        int n_radii = 24, int n_angles = 24);

enum class FamilySide { Space, Frequency };

/// Cardinal interpolants Phi_node(z) = S(z) / (S'(node)(z - node)), stored as
/// e^{-a |node|^p} Phi_node sampled on the grid (primal axis of `side`), with
/// the transformed side attached and the decay constants measured.
struct InterpolantFamily {
    FamilySide side = FamilySide::Space;
    Grid grid;
    double p = 2.0;
    double a = 0.0;
    std::vector<double> nodes;
    Eigen::MatrixXcd primal; // n x N, scaled samples on the side's own axis
    Eigen::MatrixXcd dual;   // n x N, transform (hat for Space, inverse for Frequency)
    double a_prime = 0.0;    // measured dual-side decay exponent
    double a_dprime = 0.0;   // measured primal-side decay exponent
    double C = 0.0;          // measured certificate constant
    bool ordering_ok = false; // a' > a > a'' > 0
    double cardinal_defect = 0.0;
};

InterpolantFamily build_interpolant_family(const LevinProduct& prod,
                                           const std::vector<double>& nodes,
                                           const Grid& grid, double a, FamilySide side,
                                           double valid_fraction = 0.8);

struct ResidualState {
    std::vector<double> lambda_nodes;
    std::vector<double> mu_nodes;
    Eigen::VectorXcd alpha; // true values (not tilde)
    Eigen::VectorXcd beta;
    int iteration = 0;

    double weighted_norm(double a, double p, double q) const;
};

struct SolveResult {
    GridFunction f;
    std::vector<double> history;     // weighted residual norms, per step
    double max_ratio = 0.0;          // max history[k+1]/history[k]
    double tail_sum = 0.0;           // sum e^{-(a'-a)|node|^p} beyond L
    double delta_bound = 0.0;        // 1/(4C) with the measured C
    bool tail_ok = false;
    double residual_max = 0.0;       // final defect at the target nodes
};

/// Geometric-contraction interpolation: residual-correction iteration in the
/// weighted l1 norm. Non-contraction (three consecutive ratios >= 1) raises
/// DivergenceError.
SolveResult solve_free_interpolation(const InterpolantFamily& phi,
                                     const InterpolantFamily& psi,
                                     const ResidualState& target, double L,
                                     int max_iter = 60, double tol = 1e-10);

struct WitnessConfig {
    double sigma = 0.90;
    double beta = 0.50;
    double eps_a = 0.05;  // a = beta (1 + eps_a)
    double L = 2.0;
    double node_radius = 11.0;     // system node radius
    double grid_x = 22.627416997969522; // self-dual with grid_n = 2048
    int grid_n = 2048;
    double R = 30.0;
    double clamp = 3e-11;          // cross-matrix noise floor (relative)
    double colsum_cap = 0.70;      // contraction-compliant column-sum cap
    double svd_threshold = 1e-8;
    double witness_tol = 1e-6;
    int max_iter = 60;
    double b = -1.0;               // kp scale; <= 0 derives it from beta
};

struct WitnessResult {
    GridFunction f;
    Verdict classification = Verdict::Indeterminate;
    double sigma = 0.0, beta = 0.0, a = 0.0;
    double L = 0.0, L_tail = 0.0;
    std::vector<double> history;
    double max_ratio = 0.0;
    int basis_dim = 0;
    int constraint_rows = 0;
    int constraint_rank = 0;
    int null_dim = 0;
    double residual_f = 0.0;     // max |f(lambda)| / sup |f|
    double residual_fhat = 0.0;
    double gs_c = 0.0;
    double gs_space = 0.0, gs_freq = 0.0;
    double a_prime = 0.0, a_dprime = 0.0, family_C = 0.0;
    double tail_sum = 0.0, delta_bound = 0.0;
    bool tail_ok = false;
    double l2_norm = 0.0;
};

/// Full subcritical-pair witness: smooth enlargement, tail-compensated
/// products, interpolant families, contraction iteration for the
/// tail-compliant targets, direct solve for the rest, and the finite
/// null-space finish over the inner constraints.
WitnessResult construct_nonuniqueness_witness(const NodeSequence& lambda,
                                              const NodeSequence& mu,
                                              const WitnessConfig& config);

} // namespace fpairs
