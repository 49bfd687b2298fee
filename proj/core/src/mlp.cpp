#include "canonlab/mlp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "canonlab/errors.hpp"

namespace canonlab {

Activation activation_from_string(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    if (name == "sigmoid") return Activation::sigmoid;
    throw std::invalid_argument("unknown activation: " + name);
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
    }
    return "?";
}

double apply_activation(Activation a, double pre) {
    switch (a) {
        case Activation::relu: return pre > 0.0 ? pre : 0.0;
        case Activation::tanh: return std::tanh(pre);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-pre));
    }
    return 0.0;
}

double activation_derivative(Activation a, double pre) {
    switch (a) {
        case Activation::relu: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: {
            const double t = std::tanh(pre);
            return 1.0 - t * t;
        }
        case Activation::sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-pre));
            return s * (1.0 - s);
        }
    }
    return 0.0;
}

MlpNetwork::MlpNetwork(int input_dim, std::vector<int> hidden_sizes, Activation activation)
    : input_dim_(input_dim), hidden_sizes_(std::move(hidden_sizes)), activation_(activation) {
    if (input_dim_ <= 0) {
        throw std::invalid_argument("MlpNetwork: input_dim must be positive");
    }
    for (int h : hidden_sizes_) {
        if (h <= 0) {
            throw std::invalid_argument("MlpNetwork: hidden sizes must be positive");
        }
    }
    widths_.push_back(input_dim_);
    widths_.insert(widths_.end(), hidden_sizes_.begin(), hidden_sizes_.end());
    widths_.push_back(1);

    int offset = 0;
    for (int l = 0; l < layer_count(); ++l) {
        layer_offsets_.push_back(offset);
        offset += (fan_in(l) + 1) * fan_out(l);
    }
    weights_.assign(static_cast<std::size_t>(offset), 0.0);
}

int MlpNetwork::weight_index(int layer, int row, int col) const {
    if (layer < 0 || layer >= layer_count() || row < 0 || row >= fan_out(layer) || col < 0 ||
        col >= fan_in(layer)) {
        throw std::invalid_argument("MlpNetwork: weight index out of range");
    }
    return layer_offsets_[static_cast<std::size_t>(layer)] + row * fan_in(layer) + col;
}

int MlpNetwork::bias_index(int layer, int row) const {
    if (layer < 0 || layer >= layer_count() || row < 0 || row >= fan_out(layer)) {
        throw std::invalid_argument("MlpNetwork: bias index out of range");
    }
    return layer_offsets_[static_cast<std::size_t>(layer)] + fan_out(layer) * fan_in(layer) + row;
}

void MlpNetwork::set_weights(std::span<const double> w) {
    if (w.size() != weights_.size()) {
        throw std::invalid_argument("MlpNetwork: weight vector has wrong length");
    }
    weights_.assign(w.begin(), w.end());
    check_finite();
}

void MlpNetwork::check_finite() const {
    for (double v : weights_) {
        if (!std::isfinite(v)) {
            throw NumericalError("MlpNetwork: non-finite weight");
        }
    }
}

namespace {

void check_input(const MlpNetwork& net, std::span<const double> x) {
    if (static_cast<int>(x.size()) != net.input_dim()) {
        throw std::invalid_argument("input dimension mismatch: expected " +
                                    std::to_string(net.input_dim()) + ", got " +
                                    std::to_string(x.size()));
    }
}

}  // namespace

double forward(const MlpNetwork& net, std::span<const double> x) {
    check_input(net, x);
    std::vector<double> cur(x.begin(), x.end());
    std::vector<double> next;
    const int L = net.layer_count();
    for (int l = 0; l < L; ++l) {
        const int out = net.fan_out(l);
        const int in = net.fan_in(l);
        next.assign(static_cast<std::size_t>(out), 0.0);
        for (int r = 0; r < out; ++r) {
            double pre = net.bias(l, r);
            for (int c = 0; c < in; ++c) {
                pre += net.weight(l, r, c) * cur[static_cast<std::size_t>(c)];
            }
            next[static_cast<std::size_t>(r)] =
                (l == L - 1) ? pre : apply_activation(net.activation(), pre);
        }
        cur.swap(next);
    }
    return cur[0];
}

ForwardTrace forward_trace(const MlpNetwork& net, std::span<const double> x) {
    check_input(net, x);
    ForwardTrace tr;
    const int L = net.layer_count();
    tr.pre.resize(static_cast<std::size_t>(L));
    tr.post.resize(static_cast<std::size_t>(L));
    std::vector<double> cur(x.begin(), x.end());
    for (int l = 0; l < L; ++l) {
        const int out = net.fan_out(l);
        const int in = net.fan_in(l);
        auto& pre = tr.pre[static_cast<std::size_t>(l)];
        auto& post = tr.post[static_cast<std::size_t>(l)];
        pre.assign(static_cast<std::size_t>(out), 0.0);
        post.assign(static_cast<std::size_t>(out), 0.0);
        for (int r = 0; r < out; ++r) {
            double p = net.bias(l, r);
            for (int c = 0; c < in; ++c) {
                p += net.weight(l, r, c) * cur[static_cast<std::size_t>(c)];
            }
            pre[static_cast<std::size_t>(r)] = p;
            post[static_cast<std::size_t>(r)] =
                (l == L - 1) ? p : apply_activation(net.activation(), p);
        }
        cur = post;
    }
    tr.output = cur[0];
    return tr;
}

namespace {

/// Backprop of seed * df/dw into `grad` (+=). Inputs of layer l are
/// tr.post[l-1] (the raw x for l == 0).
void accumulate_grad(const MlpNetwork& net, std::span<const double> x, const ForwardTrace& tr,
                     double seed, Eigen::VectorXd& grad) {
    const int L = net.layer_count();
    std::vector<double> delta{seed};  // sensitivity at output pre-activation
    for (int l = L - 1; l >= 0; --l) {
        const int out = net.fan_out(l);
        const int in = net.fan_in(l);
        const auto layer_input = [&](int c) -> double {
            return l == 0 ? x[static_cast<std::size_t>(c)]
                          : tr.post[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(c)];
        };
        for (int r = 0; r < out; ++r) {
            const double d = delta[static_cast<std::size_t>(r)];
            if (d != 0.0) {
                for (int c = 0; c < in; ++c) {
                    grad[net.weight_index(l, r, c)] += d * layer_input(c);
                }
            }
            grad[net.bias_index(l, r)] += d;
        }
        if (l > 0) {
            std::vector<double> prev(static_cast<std::size_t>(in), 0.0);
            for (int c = 0; c < in; ++c) {
                double s = 0.0;
                for (int r = 0; r < out; ++r) {
                    s += net.weight(l, r, c) * delta[static_cast<std::size_t>(r)];
                }
                prev[static_cast<std::size_t>(c)] =
                    s * activation_derivative(
                            net.activation(),
                            tr.pre[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(c)]);
            }
            delta.swap(prev);
        }
    }
}

}  // namespace

Eigen::VectorXd grad_weights(const MlpNetwork& net, std::span<const double> x) {
    const ForwardTrace tr = forward_trace(net, x);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(net.weight_count());
    accumulate_grad(net, x, tr, 1.0, grad);
    return grad;
}

LossGrad loss_and_grad(const MlpNetwork& net, const TrainingSet& data, Loss loss) {
    (void)loss;  // mse is the only loss
    if (data.empty()) {
        throw std::invalid_argument("loss_and_grad: empty training set");
    }
    if (data.input_dim() != net.input_dim()) {
        throw std::invalid_argument("loss_and_grad: dataset/network dimension mismatch");
    }
    LossGrad out;
    out.grad = Eigen::VectorXd::Zero(net.weight_count());
    for (int t = 0; t < data.size(); ++t) {
        const ForwardTrace tr = forward_trace(net, data.x(t));
        const double residual = tr.output - data.y(t);
        out.loss += residual * residual;
        accumulate_grad(net, data.x(t), tr, 2.0 * residual, out.grad);
    }
    return out;
}

std::vector<NeuronId> detect_dead_neurons(const MlpNetwork& net,
                                          const std::vector<std::vector<double>>& probe_grid) {
    if (probe_grid.empty()) {
        throw std::invalid_argument("detect_dead_neurons: empty probe grid");
    }
    constexpr double kDeadRange = 1e-10;
    const int hidden_layers = static_cast<int>(net.hidden_sizes().size());
    std::vector<std::vector<double>> lo(static_cast<std::size_t>(hidden_layers));
    std::vector<std::vector<double>> hi(static_cast<std::size_t>(hidden_layers));
    for (int l = 0; l < hidden_layers; ++l) {
        lo[static_cast<std::size_t>(l)].assign(
            static_cast<std::size_t>(net.fan_out(l)), std::numeric_limits<double>::infinity());
        hi[static_cast<std::size_t>(l)].assign(
            static_cast<std::size_t>(net.fan_out(l)), -std::numeric_limits<double>::infinity());
    }
    for (const auto& p : probe_grid) {
        const ForwardTrace tr = forward_trace(net, p);
        for (int l = 0; l < hidden_layers; ++l) {
            for (int u = 0; u < net.fan_out(l); ++u) {
                const double v = tr.post[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)];
                lo[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)] =
                    std::min(lo[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)], v);
                hi[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)] =
                    std::max(hi[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)], v);
            }
        }
    }
    std::vector<NeuronId> dead;
    for (int l = 0; l < hidden_layers; ++l) {
        for (int u = 0; u < net.fan_out(l); ++u) {
            const double range = hi[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)] -
                                 lo[static_cast<std::size_t>(l)][static_cast<std::size_t>(u)];
            if (range <= kDeadRange) {
                dead.push_back({l, u});
            }
        }
    }
    return dead;
}

std::vector<std::pair<NeuronId, NeuronId>> detect_duplicated_neurons(const MlpNetwork& net,
                                                                     double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("detect_duplicated_neurons: tol must be positive");
    }
    std::vector<std::pair<NeuronId, NeuronId>> pairs;
    const int hidden_layers = static_cast<int>(net.hidden_sizes().size());
    for (int l = 0; l < hidden_layers; ++l) {
        const int units = net.fan_out(l);
        const int in = net.fan_in(l);
        const int out_next = net.fan_out(l + 1);
        for (int a = 0; a < units; ++a) {
            for (int b = a + 1; b < units; ++b) {
                double din = std::abs(net.bias(l, a) - net.bias(l, b));
                for (int c = 0; c < in; ++c) {
                    din = std::max(din, std::abs(net.weight(l, a, c) - net.weight(l, b, c)));
                }
                if (din > tol) continue;
                double dout = 0.0;
                for (int r = 0; r < out_next; ++r) {
                    dout = std::max(dout,
                                    std::abs(net.weight(l + 1, r, a) - net.weight(l + 1, r, b)));
                }
                if (dout > tol) continue;
                pairs.push_back({NeuronId{l, a}, NeuronId{l, b}});
            }
        }
    }
    return pairs;
}

std::vector<std::vector<double>> uniform_probe_grid(int input_dim, int points_per_dim) {
    if (input_dim <= 0 || points_per_dim < 2) {
        throw std::invalid_argument("uniform_probe_grid: need input_dim >= 1, points >= 2");
    }
    long long total = 1;
    for (int j = 0; j < input_dim; ++j) total *= points_per_dim;
    std::vector<std::vector<double>> grid;
    grid.reserve(static_cast<std::size_t>(total));
    std::vector<int> digit(static_cast<std::size_t>(input_dim), 0);
    for (long long n = 0; n < total; ++n) {
        std::vector<double> p(static_cast<std::size_t>(input_dim));
        for (int j = 0; j < input_dim; ++j) {
            p[static_cast<std::size_t>(j)] =
                static_cast<double>(digit[static_cast<std::size_t>(j)]) / (points_per_dim - 1);
        }
        grid.push_back(std::move(p));
        for (int j = input_dim - 1; j >= 0; --j) {
            if (++digit[static_cast<std::size_t>(j)] < points_per_dim) break;
            digit[static_cast<std::size_t>(j)] = 0;
        }
    }
    return grid;
}

}  // namespace canonlab
