#include "canonlab/disparity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "canonlab/errors.hpp"

namespace canonlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

WeightGradModel model_view(const MlpNetwork& net) {
    return WeightGradModel{
        net.input_dim(),
        net.weight_count(),
        [&net](std::span<const double> x) { return forward(net, x); },
        [&net](std::span<const double> x) { return grad_weights(net, x); },
    };
}

DisparityMatrix build_disparity(const WeightGradModel& model, const FrequencyIndexSet& idx,
                                const QuadratureGrid& grid) {
    grid.require_nyquist(idx);
    if (model.input_dim != idx.dims()) {
        throw std::invalid_argument("build_disparity: model/index-set dimension mismatch");
    }
    const int M = model.weight_count;
    const int N = idx.size();
    const int K = idx.dims();
    const long long nodes = grid.node_count();
    const double inv_nodes = 1.0 / static_cast<double>(nodes);

    Eigen::MatrixXd h_re = Eigen::MatrixXd::Zero(M, N);
    Eigen::MatrixXd h_im = Eigen::MatrixXd::Zero(M, N);

    // Stream the grid in blocks: one gradient sweep per node, shared across
    // all M rows, then two real GEMMs per block. Node order is fixed, so the
    // reduction is deterministic.
    const long long block = 256;
    Eigen::MatrixXd grads(block, M);
    Eigen::MatrixXd phase_re(block, N);
    Eigen::MatrixXd phase_im(block, N);
    std::vector<double> x(static_cast<std::size_t>(K));
    std::vector<int> k(static_cast<std::size_t>(K));

    for (long long start = 0; start < nodes; start += block) {
        const long long count = std::min(block, nodes - start);
        for (long long b = 0; b < count; ++b) {
            grid.node_into(start + b, x);
            const Eigen::VectorXd g = model.weight_gradient(x);
            if (g.size() != M) {
                throw std::invalid_argument("build_disparity: gradient length mismatch");
            }
            if (!g.allFinite()) {
                throw NumericalError("build_disparity: non-finite derivative at a node");
            }
            grads.row(b) = g.transpose();
            for (int i = 0; i < N; ++i) {
                idx.tuple_into(i, k);
                double dot = 0.0;
                for (int j = 0; j < K; ++j) {
                    dot += k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
                }
                const double angle = -kTwoPi * dot;
                phase_re(b, i) = std::cos(angle) * inv_nodes;
                phase_im(b, i) = std::sin(angle) * inv_nodes;
            }
        }
        h_re.noalias() += grads.topRows(count).transpose() * phase_re.topRows(count);
        h_im.noalias() += grads.topRows(count).transpose() * phase_im.topRows(count);
    }

    DisparityMatrix H{Eigen::MatrixXcd(M, N), idx, grid};
    H.matrix.real() = h_re;
    H.matrix.imag() = h_im;
    return H;
}

DisparityMatrix build_disparity(const MlpNetwork& net, const FrequencyIndexSet& idx,
                                const QuadratureGrid& grid) {
    return build_disparity(model_view(net), idx, grid);
}

RankReport numerical_rank(const Eigen::MatrixXcd& matrix, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw std::invalid_argument("numerical_rank: rel_tol must be in (0, 1)");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("numerical_rank: SVD did not converge");
    }
    RankReport report;
    report.singular_values = svd.singularValues();
    const double sigma_max = report.singular_values.size() > 0 ? report.singular_values[0] : 0.0;
    report.tolerance_used =
        rel_tol * sigma_max * static_cast<double>(std::max(matrix.rows(), matrix.cols()));
    int rank = 0;
    for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
        if (report.singular_values[i] > report.tolerance_used) ++rank;
    }
    report.numerical_rank = rank;
    report.sigma_min_over_sigma_max =
        sigma_max > 0.0 ? report.singular_values[report.singular_values.size() - 1] / sigma_max
                        : 0.0;
    return report;
}

RankReport numerical_rank(const DisparityMatrix& H, double rel_tol) {
    return numerical_rank(H.matrix, rel_tol);
}

Eigen::VectorXcd canonical_gradient(const CanonicalCoeffs& coeffs, const TrainingSet& data,
                                    Loss loss) {
    (void)loss;
    if (data.empty()) {
        throw std::invalid_argument("canonical_gradient: empty training set");
    }
    if (data.input_dim() != coeffs.index_set.dims()) {
        throw std::invalid_argument("canonical_gradient: dataset/index-set dimension mismatch");
    }
    const int N = coeffs.index_set.size();
    const int K = coeffs.index_set.dims();
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(N);
    std::vector<int> k(static_cast<std::size_t>(K));
    for (int t = 0; t < data.size(); ++t) {
        const double yhat = partial_sum_eval(coeffs, data.x(t));
        const double lprime = 2.0 * (yhat - data.y(t));
        for (int i = 0; i < N; ++i) {
            coeffs.index_set.tuple_into(i, k);
            double dot = 0.0;
            for (int j = 0; j < K; ++j) {
                dot += k[static_cast<std::size_t>(j)] * data.x(t)[static_cast<std::size_t>(j)];
            }
            const double angle = kTwoPi * dot;
            g[i] += lprime * std::complex<double>(std::cos(angle), std::sin(angle));
        }
    }
    return g;
}

ChainRuleResidual chain_rule_residual(const WeightGradModel& model, const TrainingSet& data,
                                      const DisparityMatrix& H) {
    if (model.weight_count != H.matrix.rows()) {
        throw std::invalid_argument("chain_rule_residual: model/H row mismatch");
    }
    // Literal gradient of Q.
    Eigen::VectorXd g_lit = Eigen::VectorXd::Zero(model.weight_count);
    for (int t = 0; t < data.size(); ++t) {
        const double residual = model.value(data.x(t)) - data.y(t);
        g_lit += 2.0 * residual * model.weight_gradient(data.x(t));
    }
    const CanonicalCoeffs theta =
        fourier_coefficients(model.value, H.index_set, H.grid);
    const Eigen::VectorXcd g_can = canonical_gradient(theta, data);
    const Eigen::VectorXcd mapped = H.matrix * g_can;

    const double denom = std::max(g_lit.norm(), 1e-15);
    ChainRuleResidual out;
    out.rel_residual = (g_lit - mapped.real()).norm() / denom;
    out.imag_residue = mapped.imag().norm() / denom;
    return out;
}

ChainRuleResidual chain_rule_residual(const MlpNetwork& net, const TrainingSet& data,
                                      const DisparityMatrix& H) {
    return chain_rule_residual(model_view(net), data, H);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::global_minimum_certificate: return "global_minimum_certificate";
        case Verdict::not_stationary: return "not_stationary";
        case Verdict::indeterminate_rank_deficient: return "indeterminate_rank_deficient";
        case Verdict::non_global_stationary: return "non_global_stationary";
    }
    return "?";
}

StationaryClassification classify_stationary_point(const MlpNetwork& net, const TrainingSet& data,
                                                   const DisparityMatrix& H, double grad_tol,
                                                   double rank_tol) {
    if (!(grad_tol > 0.0) || !(rank_tol > 0.0)) {
        throw std::invalid_argument("classify_stationary_point: tolerances must be positive");
    }
    StationaryClassification out;
    out.literal_grad_norm = loss_and_grad(net, data).grad.norm();
    const CanonicalCoeffs theta = project_network(net, H.index_set, H.grid);
    out.canonical_grad_norm = canonical_gradient(theta, data).norm();
    out.rank_report = numerical_rank(H, rank_tol);

    const bool full_rank = out.rank_report.numerical_rank == H.index_set.size();
    if (out.literal_grad_norm > grad_tol) {
        out.verdict = Verdict::not_stationary;
    } else if (full_rank) {
        out.verdict = Verdict::global_minimum_certificate;
    } else if (out.canonical_grad_norm <= grad_tol) {
        out.verdict = Verdict::global_minimum_certificate;
    } else if (out.canonical_grad_norm > grad_tol) {
        out.verdict = Verdict::non_global_stationary;
    } else {
        out.verdict = Verdict::indeterminate_rank_deficient;
    }
    return out;
}

}  // namespace canonlab
