#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "canonlab/dataset.hpp"
#include "canonlab/fourier.hpp"
#include "canonlab/mlp.hpp"

namespace canonlab {

/// Any scalar-valued model that exposes a per-weight gradient can be lifted
/// into the canonical space. MlpNetwork is the primary case; fixed feature
/// maps (e.g. a trigonometric feature model, which makes the chain-rule
/// identity exact) plug in through the same surface.
struct WeightGradModel {
    int input_dim = 0;
    int weight_count = 0;
    std::function<double(std::span<const double>)> value;
    std::function<Eigen::VectorXd(std::span<const double>)> weight_gradient;
};

WeightGradModel model_view(const MlpNetwork& net);

/// H(w): row m holds the truncated Fourier coefficients of x -> df_w(x)/dw_m,
/// columns aligned with the index-set enumeration.
struct DisparityMatrix {
    Eigen::MatrixXcd matrix;  // M x N
    FrequencyIndexSet index_set;
    QuadratureGrid grid;
};

/// One gradient sweep per grid node, shared across all M rows.
DisparityMatrix build_disparity(const WeightGradModel& model, const FrequencyIndexSet& idx,
                                const QuadratureGrid& grid);
DisparityMatrix build_disparity(const MlpNetwork& net, const FrequencyIndexSet& idx,
                                const QuadratureGrid& grid);

/// Numerical rank via complex SVD with the relative threshold
/// rel_tol * sigma_max * max(M, N). Full rank means rank == N.
struct RankReport {
    Eigen::VectorXd singular_values;  // non-increasing
    int numerical_rank = 0;
    double tolerance_used = 0.0;
    double sigma_min_over_sigma_max = 0.0;
};

RankReport numerical_rank(const Eigen::MatrixXcd& matrix, double rel_tol = 1e-10);
RankReport numerical_rank(const DisparityMatrix& H, double rel_tol = 1e-10);

/// Gradient of Q in the canonical space under the linear-functional
/// convention: g_k = sum_t l'(y_t, yhat_t) * e^{2 pi i k.x_t} with
/// yhat_t = partial_sum_eval(coeffs, x_t) and l'(y, yhat) = 2(yhat - y).
/// No conjugation, so that grad_w Q = H * grad_theta Q holds as written.
Eigen::VectorXcd canonical_gradient(const CanonicalCoeffs& coeffs, const TrainingSet& data,
                                    Loss loss = Loss::mse);

struct ChainRuleResidual {
    /// || grad_w Q - Re(H * grad_theta Q) ||_2 / max(||grad_w Q||_2, 1e-15)
    double rel_residual = 0.0;
    /// || Im(H * grad_theta Q) ||_2 / max(||grad_w Q||_2, 1e-15)
    double imag_residue = 0.0;
};

/// The identity is exact only in the untruncated limit; the residual shrinks
/// under index-set refinement and vanishes for band-limited models.
ChainRuleResidual chain_rule_residual(const WeightGradModel& model, const TrainingSet& data,
                                      const DisparityMatrix& H);
ChainRuleResidual chain_rule_residual(const MlpNetwork& net, const TrainingSet& data,
                                      const DisparityMatrix& H);

enum class Verdict {
    global_minimum_certificate,
    not_stationary,
    indeterminate_rank_deficient,
    non_global_stationary,
};

std::string to_string(Verdict v);

struct StationaryClassification {
    double literal_grad_norm = 0.0;
    double canonical_grad_norm = 0.0;
    RankReport rank_report;
    Verdict verdict = Verdict::not_stationary;
};

/// Decision table:
///   literal grad norm > grad_tol              -> not_stationary
///   full rank                                 -> global_minimum_certificate
///   canonical grad norm <= grad_tol           -> global_minimum_certificate
///   canonical grad norm >  grad_tol           -> non_global_stationary
///   otherwise (non-finite norms)              -> indeterminate_rank_deficient
StationaryClassification classify_stationary_point(const MlpNetwork& net, const TrainingSet& data,
                                                   const DisparityMatrix& H, double grad_tol,
                                                   double rank_tol);

}  // namespace canonlab
