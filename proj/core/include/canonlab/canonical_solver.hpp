#pragma once

#include <optional>
#include <span>

#include <Eigen/Core>

#include "canonlab/dataset.hpp"
#include "canonlab/fourier.hpp"

namespace canonlab {

enum class SolverKind { min_norm_direct, gradient_descent };

std::string to_string(SolverKind s);

struct CanonicalFitResult {
    CanonicalCoeffs coeffs;
    double final_loss = 0.0;
    long iterations = 0;
    SolverKind solver = SolverKind::min_norm_direct;
    /// sigma_max / sigma_min of the T x N system matrix.
    double condition_number = 0.0;
    /// Set when the condition number exceeds 1e8: results are still returned
    /// but interpolation accuracy is no longer guaranteed.
    bool ill_conditioned = false;
};

/// A(t, kappa) = e^{2 pi i k.x_t}: the linear system behind zero-loss
/// interpolation in the canonical space.
Eigen::MatrixXcd system_matrix(const TrainingSet& data, const FrequencyIndexSet& idx);

/// Q(theta) = sum_t (y_t - partial_sum_eval(theta, x_t))^2.
double canonical_loss(const CanonicalCoeffs& coeffs, const TrainingSet& data);

/// Minimum-norm interpolant of the T x N system (SVD pseudoinverse).
/// Requires N >= T and pairwise-distinct inputs; a numerically singular
/// square system (N == T) is a hard error reported with its condition number.
CanonicalFitResult solve_zero_loss(const TrainingSet& data, const FrequencyIndexSet& idx);

struct ConvexGdOptions {
    /// Start point; zero coefficients when absent.
    std::optional<CanonicalCoeffs> init;
    /// Stop early once the loss falls to or below this value (0 = run all steps).
    double stop_below = 0.0;
};

/// Full-batch gradient descent on Q in the real-stacked parametrization,
/// re-symmetrized to the Hermitian subspace after every step so the iterate
/// always represents a real function. Requires 0 < lr < 1/L with
/// L = 2*sigma_max(A)^2, which makes the loss sequence non-increasing; an
/// increase is a hard error.
CanonicalFitResult convex_gd(const TrainingSet& data, const FrequencyIndexSet& idx, long steps,
                             double lr, const ConvexGdOptions& options = {});

/// Midpoint-convexity audit: Q(l*t1 + (1-l)*t2) <= l*Q(t1) + (1-l)*Q(t2) + 1e-9
/// for every lambda given. Both coefficient vectors must share the index set.
bool convexity_probe(const CanonicalCoeffs& f1, const CanonicalCoeffs& f2,
                     const TrainingSet& data, std::span<const double> lambdas);

}  // namespace canonlab
