#include "canonlab/canonical_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "canonlab/errors.hpp"

namespace canonlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIllConditionThreshold = 1e8;
}  // namespace

std::string to_string(SolverKind s) {
    switch (s) {
        case SolverKind::min_norm_direct: return "min_norm_direct";
        case SolverKind::gradient_descent: return "gradient_descent";
    }
    return "?";
}

Eigen::MatrixXcd system_matrix(const TrainingSet& data, const FrequencyIndexSet& idx) {
    if (data.empty()) {
        throw std::invalid_argument("system_matrix: empty training set");
    }
    if (data.input_dim() != idx.dims()) {
        throw std::invalid_argument("system_matrix: dataset/index-set dimension mismatch");
    }
    const int T = data.size();
    const int N = idx.size();
    Eigen::MatrixXcd A(T, N);
    std::vector<int> k(static_cast<std::size_t>(idx.dims()));
    for (int t = 0; t < T; ++t) {
        for (int i = 0; i < N; ++i) {
            idx.tuple_into(i, k);
            double dot = 0.0;
            for (int j = 0; j < idx.dims(); ++j) {
                dot += k[static_cast<std::size_t>(j)] * data.x(t)[static_cast<std::size_t>(j)];
            }
            const double angle = kTwoPi * dot;
            A(t, i) = std::complex<double>(std::cos(angle), std::sin(angle));
        }
    }
    return A;
}

double canonical_loss(const CanonicalCoeffs& coeffs, const TrainingSet& data) {
    double q = 0.0;
    for (int t = 0; t < data.size(); ++t) {
        const double r = data.y(t) - partial_sum_eval(coeffs, data.x(t));
        q += r * r;
    }
    return q;
}

CanonicalFitResult solve_zero_loss(const TrainingSet& data, const FrequencyIndexSet& idx) {
    const int T = data.size();
    const int N = idx.size();
    if (N < T) {
        throw std::invalid_argument("solve_zero_loss: need N >= T (got N=" + std::to_string(N) +
                                    ", T=" + std::to_string(T) + ")");
    }
    const Eigen::MatrixXcd A = system_matrix(data, idx);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("solve_zero_loss: SVD did not converge");
    }
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma[0];
    const double sigma_min = sigma[sigma.size() - 1];
    const double cond = sigma_min > 0.0 ? sigma_max / sigma_min
                                        : std::numeric_limits<double>::infinity();
    if (N == T) {
        // Square system: singularity is an error, not a silently bad fit.
        const double cutoff = 1e-12 * sigma_max * static_cast<double>(N);
        if (sigma_min <= cutoff) {
            throw NumericalError(
                "solve_zero_loss: numerically singular square system, condition number " +
                std::to_string(cond));
        }
    }
    const Eigen::VectorXcd y =
        Eigen::Map<const Eigen::VectorXd>(data.targets().data(), T).cast<std::complex<double>>();
    CanonicalFitResult fit;
    fit.solver = SolverKind::min_norm_direct;
    fit.coeffs = CanonicalCoeffs{idx, svd.solve(y), std::nullopt};
    fit.final_loss = canonical_loss(fit.coeffs, data);
    fit.iterations = 0;
    fit.condition_number = cond;
    fit.ill_conditioned = !(cond <= kIllConditionThreshold);
    return fit;
}

namespace {

/// theta_k <- (theta_k + conj(theta_{-k})) / 2: exact projection onto the
/// Hermitian subspace, where the partial sum is a real function.
void hermitian_symmetrize(CanonicalCoeffs& coeffs) {
    const int N = coeffs.index_set.size();
    Eigen::VectorXcd sym(N);
    for (int i = 0; i < N; ++i) {
        const int ni = coeffs.index_set.negation_index(i);
        sym[i] = 0.5 * (coeffs.values[i] + std::conj(coeffs.values[ni]));
    }
    coeffs.values = std::move(sym);
}

}  // namespace

CanonicalFitResult convex_gd(const TrainingSet& data, const FrequencyIndexSet& idx, long steps,
                             double lr, const ConvexGdOptions& options) {
    if (data.empty()) {
        throw std::invalid_argument("convex_gd: empty training set");
    }
    if (steps < 0) {
        throw std::invalid_argument("convex_gd: steps must be non-negative");
    }
    const Eigen::MatrixXcd A = system_matrix(data, idx);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const double sigma_max = svd.singularValues()[0];
    const double lipschitz = 2.0 * sigma_max * sigma_max;
    if (!(lr > 0.0)) {
        throw std::invalid_argument("convex_gd: lr must be positive");
    }
    if (!(lr < 1.0 / lipschitz)) {
        throw std::invalid_argument("convex_gd: lr too large for guaranteed descent (need lr < " +
                                    std::to_string(1.0 / lipschitz) + ")");
    }

    CanonicalCoeffs theta = options.init
                                ? *options.init
                                : CanonicalCoeffs{idx, Eigen::VectorXcd::Zero(idx.size()),
                                                  std::nullopt};
    if (!(theta.index_set == idx)) {
        throw std::invalid_argument("convex_gd: init coefficients use a different index set");
    }

    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(data.targets().data(), data.size());
    auto loss_of = [&](const Eigen::VectorXcd& v) {
        const Eigen::VectorXd yhat = (A * v).real();
        return (y - yhat).squaredNorm();
    };

    double loss = loss_of(theta.values);
    long iter = 0;
    for (; iter < steps; ++iter) {
        if (options.stop_below > 0.0 && loss <= options.stop_below) break;
        const Eigen::VectorXd residual = (A * theta.values).real() - y;
        // Real-stacked gradient in complex form: dQ/du_k + i dQ/dv_k.
        const Eigen::VectorXcd grad = 2.0 * (A.adjoint() * residual.cast<std::complex<double>>());
        theta.values -= lr * grad;
        hermitian_symmetrize(theta);
        const double next = loss_of(theta.values);
        if (next > loss + 1e-12 * (1.0 + loss)) {
            throw NumericalError("convex_gd: loss increased from " + std::to_string(loss) +
                                 " to " + std::to_string(next));
        }
        loss = next;
    }

    CanonicalFitResult fit;
    fit.solver = SolverKind::gradient_descent;
    fit.coeffs = std::move(theta);
    fit.final_loss = loss;
    fit.iterations = iter;
    const double sigma_min = svd.singularValues()[svd.singularValues().size() - 1];
    fit.condition_number = sigma_min > 0.0 ? sigma_max / sigma_min
                                           : std::numeric_limits<double>::infinity();
    fit.ill_conditioned = !(fit.condition_number <= kIllConditionThreshold);
    return fit;
}

bool convexity_probe(const CanonicalCoeffs& f1, const CanonicalCoeffs& f2,
                     const TrainingSet& data, std::span<const double> lambdas) {
    if (!(f1.index_set == f2.index_set)) {
        throw std::invalid_argument("convexity_probe: index-set mismatch");
    }
    const double q1 = canonical_loss(f1, data);
    const double q2 = canonical_loss(f2, data);
    for (double lambda : lambdas) {
        if (!(lambda >= 0.0 && lambda <= 1.0)) {
            throw std::invalid_argument("convexity_probe: lambda outside [0,1]");
        }
        CanonicalCoeffs mix{f1.index_set,
                            lambda * f1.values + (1.0 - lambda) * f2.values, std::nullopt};
        const double qmix = canonical_loss(mix, data);
        if (qmix > lambda * q1 + (1.0 - lambda) * q2 + 1e-9) {
            return false;
        }
    }
    return true;
}

}  // namespace canonlab
