#pragma once

#include <Eigen/Dense>

#include <vector>

#include "fpairs/grid.hpp"
#include "fpairs/nodes.hpp"
#include "fpairs/spectral.hpp"

namespace fpairs {

/// Weighted sample map Tf = ( w_lambda f(lambda), w_mu fhat(mu) ) restricted
/// to the nodes inside the usable part of the grid (|node| <= 0.8 X).
/// Squared weights are (1+|lambda|)^{(2s-1)p+1} and (1+|mu|)^{(2s-1)q+1};
/// the square roots are premultiplied so all inner products are Euclidean.
struct SamplingOperator {
    NodeSequence lambda;
    NodeSequence mu;
    SpaceParams params;
    Grid grid;
    std::vector<double> lambda_weights;
    std::vector<double> mu_weights;
    int clipped_lambda = 0;
    int clipped_mu = 0;

    int rows() const {
        return static_cast<int>(lambda.points.size() + mu.points.size());
    }
    Eigen::VectorXcd apply(const GridFunction& f) const;
};

SamplingOperator build_sampling_operator(const NodeSequence& lambda,
                                         const NodeSequence& mu,
                                         const SpaceParams& params, const Grid& grid);

/// Restricted frame model on the Hermite test subspace of dimension m.
/// A_est/B_est are the extremal generalized eigenvalues of (S^H S, Gram);
/// they are subspace-restricted certificates, not bounds for the full space.
struct FrameModel {
    SamplingOperator op;
    int m = 0;
    double A_est = 0.0;
    double B_est = 0.0;
    double A_raw = 0.0;   // smallest pencil eigenvalue before clamping at 0
    bool degenerate = false;
    double gram_condition = 0.0;
    std::vector<GridFunction> basis;
    Eigen::MatrixXcd gram;          // m x m, H_{s,p,q} inner products
    Eigen::MatrixXcd sample_matrix; // rows() x m, weighted samples
    Eigen::VectorXd pencil_values;  // ascending
    Eigen::MatrixXcd pencil_vectors;
};

FrameModel estimate_frame_bounds(const SamplingOperator& op, int m);

/// Interpolation basis a_lambda, b_mu within the test subspace: coefficient
/// columns of the pencil pseudo-inverse applied to the weighted deltas.
struct InterpolationBasis {
    SpaceParams params;
    Grid grid;
    std::vector<double> lambda_nodes;
    std::vector<double> mu_nodes;
    Eigen::MatrixXcd coeffs;            // m x (L + M) basis coefficients
    std::vector<double> residual_norms; // construction residual per node
    std::vector<double> hspq_norms;     // ||a_lambda|| resp ||b_mu||
    std::vector<GridFunction> basis;    // Hermite functions
    double frame_A = 0.0;

    int lambda_count() const { return static_cast<int>(lambda_nodes.size()); }
    int node_count() const { return static_cast<int>(coeffs.cols()); }
    /// Materialize a_lambda (idx < lambda_count) or b_mu (idx >= lambda_count).
    GridFunction function_at(int idx) const;
    /// Pointwise values a_.(x) for every node column at once.
    Eigen::VectorXcd values_at(double x) const;
    Eigen::VectorXcd freq_values_at(double xi) const;
};

InterpolationBasis build_interpolation_basis(const FrameModel& model);

/// f = sum f(lambda) a_lambda + sum fhat(mu) b_mu with index-aligned samples.
GridFunction reconstruct(const InterpolationBasis& basis,
                         const Eigen::VectorXcd& lambda_samples,
                         const Eigen::VectorXcd& mu_samples);

struct DsDemoResult {
    double A_before = 0.0;
    double A_after = 0.0;
    bool rank_ok = false; // false = completeness violation (rank < m)
};

/// Remove up to 5 sample rows and re-estimate the lower constant.
DsDemoResult duffin_schaeffer_demo(const FrameModel& model,
                                   const std::vector<int>& removed_rows);

struct DecayEntry {
    double r = 0.0;
    double slope_lambda = 0.0;
    double slope_mu = 0.0;
    double hspq_sq = 0.0;
    bool slopes_pass = false;
    bool norm_proxy_pass = false;
    bool consistent = false;
};

struct DecayReport {
    std::vector<DecayEntry> entries;
    bool degenerate = false; // f = 0
};

/// Log-log decay fit of |f| on lambda and |fhat| on mu per requested rate r,
/// compared with the weighted-norm proxy at s = r / min(p, q): the proxy
/// passes when the outer half of the grid carries at most half of the
/// weighted integrand mass (a divergence would concentrate mass outward).
DecayReport decay_to_schwartz_check(const GridFunction& f, const NodeSequence& lambda,
                                    const NodeSequence& mu,
                                    const std::vector<double>& r_list);

} // namespace fpairs
