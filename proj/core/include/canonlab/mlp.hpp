#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "canonlab/dataset.hpp"

namespace canonlab {

enum class Activation { relu, tanh, sigmoid };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation a);

double apply_activation(Activation a, double pre);
/// Derivative with respect to the pre-activation. The ReLU subderivative at
/// exactly 0 is 0.
double activation_derivative(Activation a, double pre);

/// Identifies a hidden unit: 0-based hidden-layer index and unit index.
struct NeuronId {
    int layer = 0;
    int unit = 0;
    friend bool operator==(const NeuronId&, const NeuronId&) = default;
    friend auto operator<=>(const NeuronId&, const NeuronId&) = default;
};

/// Dense scalar-output feed-forward network over a flat weight vector.
///
/// Flat layout, fixed for the life of the project because disparity-matrix
/// rows index into it: layer by layer; within a layer the incoming weight
/// matrix row-major (one row per destination unit), then the layer's biases.
/// The output layer is a single linear unit. Inputs live in [0,1]^K.
class MlpNetwork {
public:
    MlpNetwork(int input_dim, std::vector<int> hidden_sizes, Activation activation);

    int input_dim() const { return input_dim_; }
    const std::vector<int>& hidden_sizes() const { return hidden_sizes_; }
    Activation activation() const { return activation_; }

    /// Hidden layers plus the output layer.
    int layer_count() const { return static_cast<int>(widths_.size()) - 1; }
    int fan_in(int layer) const { return widths_[static_cast<std::size_t>(layer)]; }
    int fan_out(int layer) const { return widths_[static_cast<std::size_t>(layer) + 1]; }
    int weight_count() const { return static_cast<int>(weights_.size()); }

    int weight_index(int layer, int row, int col) const;
    int bias_index(int layer, int row) const;

    double weight(int layer, int row, int col) const { return weights_[static_cast<std::size_t>(weight_index(layer, row, col))]; }
    double bias(int layer, int row) const { return weights_[static_cast<std::size_t>(bias_index(layer, row))]; }
    void set_weight(int layer, int row, int col, double v) { weights_[static_cast<std::size_t>(weight_index(layer, row, col))] = v; }
    void set_bias(int layer, int row, double v) { weights_[static_cast<std::size_t>(bias_index(layer, row))] = v; }

    std::span<const double> weights() const { return weights_; }
    std::span<double> mutable_weights() { return weights_; }
    void set_weights(std::span<const double> w);

    /// Hard error (NumericalError) if any weight is NaN or infinite.
    void check_finite() const;

private:
    int input_dim_;
    std::vector<int> hidden_sizes_;
    Activation activation_;
    std::vector<int> widths_;         // [K, hidden..., 1]
    std::vector<int> layer_offsets_;  // flat offset of each layer's block
    std::vector<double> weights_;
};

/// f_w(x). Pure; errors on dimension mismatch.
double forward(const MlpNetwork& net, std::span<const double> x);

/// Per-layer pre/post activations of one evaluation, reused by backprop and
/// the degeneracy probes.
struct ForwardTrace {
    std::vector<std::vector<double>> pre;
    std::vector<std::vector<double>> post;
    double output = 0.0;
};
ForwardTrace forward_trace(const MlpNetwork& net, std::span<const double> x);

/// Exact reverse-mode gradient (df/dw_1, ..., df/dw_M).
Eigen::VectorXd grad_weights(const MlpNetwork& net, std::span<const double> x);

enum class Loss { mse };

struct LossGrad {
    double loss = 0.0;
    Eigen::VectorXd grad;
};

/// Q = sum_t (y_t - f_w(x_t))^2 and its weight gradient, accumulated in
/// sample order then ascending weight index.
LossGrad loss_and_grad(const MlpNetwork& net, const TrainingSet& data, Loss loss = Loss::mse);

/// Hidden units whose post-activation range over the probe grid is <= 1e-10.
/// Covers ReLU-inactive and saturated-constant units uniformly.
std::vector<NeuronId> detect_dead_neurons(const MlpNetwork& net,
                                          const std::vector<std::vector<double>>& probe_grid);

/// Same-layer pairs whose incoming rows (with bias) and outgoing columns both
/// differ by <= tol in max-norm. Both sides are required; equal incoming
/// weights alone do not make a duplicate.
std::vector<std::pair<NeuronId, NeuronId>> detect_duplicated_neurons(const MlpNetwork& net,
                                                                     double tol);

/// Uniform tensor grid over [0,1]^K including both endpoints.
std::vector<std::vector<double>> uniform_probe_grid(int input_dim, int points_per_dim);

}  // namespace canonlab
