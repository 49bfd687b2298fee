#include "canonlab/trainer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "canonlab/errors.hpp"
#include "canonlab/rng.hpp"

namespace canonlab {

InitKind init_kind_from_string(const std::string& name) {
    if (name == "uniform_fan_in") return InitKind::uniform_fan_in;
    if (name == "center_cutting") return InitKind::center_cutting;
    throw std::invalid_argument("unknown init scheme: " + name);
}

std::string to_string(InitKind k) {
    switch (k) {
        case InitKind::uniform_fan_in: return "uniform_fan_in";
        case InitKind::center_cutting: return "center_cutting";
    }
    return "?";
}

std::string InitScheme::bias_rule() const {
    switch (kind) {
        case InitKind::uniform_fan_in: return "all biases zero";
        case InitKind::center_cutting:
            return "hidden bias = -(w . c) + u, c = (0.5,...,0.5), u ~ U(-0.1, 0.1)";
    }
    return "?";
}

MlpNetwork init_random(const Architecture& arch, const InitScheme& scheme, std::uint64_t seed) {
    if (!(scheme.scale > 0.0)) {
        throw std::invalid_argument("init_random: scale must be positive");
    }
    MlpNetwork net(arch.input_dim, arch.hidden_sizes, arch.activation);
    Rng rng(seed);
    const int L = net.layer_count();
    for (int l = 0; l < L; ++l) {
        const double bound = scheme.scale * std::sqrt(3.0 / net.fan_in(l));
        for (int r = 0; r < net.fan_out(l); ++r) {
            for (int c = 0; c < net.fan_in(l); ++c) {
                net.set_weight(l, r, c, rng.uniform(-bound, bound));
            }
        }
        // Biases stay zero under uniform_fan_in.
    }
    if (scheme.kind == InitKind::center_cutting) {
        // Shift every hidden hyperplane so it cuts its input box near the
        // center c = (0.5,...,0.5).
        for (int l = 0; l + 1 < L + 1 && l < L - 1 + 1; ++l) {
            if (l == L - 1) break;  // output layer keeps bias 0
            for (int r = 0; r < net.fan_out(l); ++r) {
                double dot = 0.0;
                for (int c = 0; c < net.fan_in(l); ++c) {
                    dot += net.weight(l, r, c) * 0.5;
                }
                net.set_bias(l, r, -dot + rng.uniform(-0.1, 0.1));
            }
        }
    }
    net.check_finite();
    return net;
}

namespace {

struct MonitorBundle {
    double full_loss;
    double grad_norm;
    std::optional<double> canonical_grad_norm;
    std::optional<int> rank;
    std::optional<double> sigma_ratio;
    std::optional<double> chain_residual;
};

MonitorBundle run_monitor(const MlpNetwork& net, const TrainingSet& data,
                          const MonitorConfig& monitor) {
    MonitorBundle out{};
    const LossGrad lg = loss_and_grad(net, data);
    out.full_loss = lg.loss;
    out.grad_norm = lg.grad.norm();
    if (monitor.index_set && monitor.grid) {
        const DisparityMatrix H = build_disparity(net, *monitor.index_set, *monitor.grid);
        const RankReport rank = numerical_rank(H, monitor.rank_rel_tol);
        out.rank = rank.numerical_rank;
        out.sigma_ratio = rank.sigma_min_over_sigma_max;
        const CanonicalCoeffs theta = project_network(net, *monitor.index_set, *monitor.grid);
        const Eigen::VectorXcd g_can = canonical_gradient(theta, data);
        out.canonical_grad_norm = g_can.norm();
        const Eigen::VectorXcd mapped = H.matrix * g_can;
        const double denom = std::max(lg.grad.norm(), 1e-15);
        out.chain_residual = (lg.grad - mapped.real()).norm() / denom;
    }
    return out;
}

void append_monitor_row(TrainingTrace& trace, long step, int epoch,
                        std::optional<double> minibatch_loss, const MonitorBundle& m) {
    TraceRow row;
    row.step = step;
    row.epoch = epoch;
    row.minibatch_loss = minibatch_loss;
    row.full_loss = m.full_loss;
    row.grad_norm_literal = m.grad_norm;
    row.grad_norm_canonical = m.canonical_grad_norm;
    row.rank = m.rank;
    row.sigma_ratio = m.sigma_ratio;
    row.chain_residual = m.chain_residual;
    trace.rows.push_back(std::move(row));
}

}  // namespace

TrainResult sgd_train(MlpNetwork net, const TrainingSet& data, Loss loss,
                      const TrainSchedule& schedule, const MonitorConfig& monitor) {
    if (data.empty()) {
        throw std::invalid_argument("sgd_train: empty training set");
    }
    if (schedule.epochs < 1) {
        throw std::invalid_argument("sgd_train: epochs must be >= 1");
    }
    if (schedule.minibatch_size < 1 || schedule.minibatch_size > data.size()) {
        throw std::invalid_argument("sgd_train: minibatch_size must be in [1, T]");
    }
    if (!(schedule.lr0 >= 0.0) || !(schedule.decay >= 0.0)) {
        throw std::invalid_argument("sgd_train: lr0 and decay must be non-negative");
    }
    if (monitor.cadence < 1) {
        throw std::invalid_argument("sgd_train: monitor cadence must be >= 1");
    }
    if (monitor.index_set && monitor.index_set->size() < data.size()) {
        throw std::invalid_argument("sgd_train: rank monitoring needs N >= T");
    }
    if (monitor.index_set && monitor.grid) {
        monitor.grid->require_nyquist(*monitor.index_set);
    }
    net.check_finite();

    TrainResult result{std::move(net), {}, TrainStatus::completed};
    const int T = data.size();
    std::vector<int> order(static_cast<std::size_t>(T));
    std::iota(order.begin(), order.end(), 0);

    long step = 0;
    int last_epoch = 1;
    for (int epoch = 1; epoch <= schedule.epochs; ++epoch) {
        last_epoch = epoch;
        Rng shuffle_rng(derive_seed(schedule.seed, 0x5huffle + static_cast<std::uint64_t>(epoch)));
        shuffle_rng.shuffle(order);
        for (int begin = 0; begin < T; begin += schedule.minibatch_size) {
            const int end = std::min(begin + schedule.minibatch_size, T);

            // Minibatch loss and gradient at w^(k), summed in sample order.
            double batch_loss = 0.0;
            Eigen::VectorXd batch_grad = Eigen::VectorXd::Zero(result.net.weight_count());
            for (int i = begin; i < end; ++i) {
                const int t = order[static_cast<std::size_t>(i)];
                const ForwardTrace tr = forward_trace(result.net, data.x(t));
                const double residual = tr.output - data.y(t);
                batch_loss += residual * residual;
                batch_grad += 2.0 * residual * grad_weights(result.net, data.x(t));
            }

            if (!std::isfinite(batch_loss)) {
                result.status = TrainStatus::diverged;
                return result;
            }

            if (step % monitor.cadence == 0) {
                append_monitor_row(result.trace, step, epoch, batch_loss,
                                   run_monitor(result.net, data, monitor));
            } else {
                TraceRow row;
                row.step = step;
                row.epoch = epoch;
                row.minibatch_loss = batch_loss;
                result.trace.rows.push_back(std::move(row));
            }

            const double h = schedule.lr0 / (1.0 + schedule.decay * static_cast<double>(step));
            auto w = result.net.mutable_weights();
            for (int m = 0; m < result.net.weight_count(); ++m) {
                w[static_cast<std::size_t>(m)] -= h * batch_grad[m];
            }
            for (double v : w) {
                if (!std::isfinite(v)) {
                    result.status = TrainStatus::diverged;
                    return result;
                }
            }
            ++step;
        }
    }
    // Final state, always monitored.
    append_monitor_row(result.trace, step, last_epoch, std::nullopt,
                       run_monitor(result.net, data, monitor));
    (void)loss;
    return result;
}

MlpNetwork make_degenerate(MlpNetwork net, const DegenerateMode& mode) {
    if (const auto* kill = std::get_if<KillNeurons>(&mode)) {
        if (net.activation() != Activation::relu) {
            throw std::invalid_argument(
                "make_degenerate: kill_neurons requires relu (saturating activations have no "
                "hard-off region)");
        }
        for (const NeuronId& id : kill->targets) {
            if (id.layer < 0 || id.layer >= static_cast<int>(net.hidden_sizes().size()) ||
                id.unit < 0 || id.unit >= net.fan_out(id.layer)) {
                throw std::invalid_argument("make_degenerate: neuron id out of range");
            }
            double abs_sum = 0.0;
            for (int c = 0; c < net.fan_in(id.layer); ++c) {
                abs_sum += std::abs(net.weight(id.layer, id.unit, c));
            }
            net.set_bias(id.layer, id.unit, -abs_sum - 1.0);
        }
        return net;
    }
    const auto& dup = std::get<DuplicateNeuron>(mode);
    const int hidden_layers = static_cast<int>(net.hidden_sizes().size());
    if (dup.src.layer != dup.dst.layer) {
        throw std::invalid_argument("make_degenerate: duplicate requires same-layer units");
    }
    if (dup.src.layer < 0 || dup.src.layer >= hidden_layers || dup.src.unit < 0 ||
        dup.src.unit >= net.fan_out(dup.src.layer) || dup.dst.unit < 0 ||
        dup.dst.unit >= net.fan_out(dup.src.layer) || dup.src.unit == dup.dst.unit) {
        throw std::invalid_argument("make_degenerate: invalid duplicate pair");
    }
    const int l = dup.src.layer;
    for (int c = 0; c < net.fan_in(l); ++c) {
        net.set_weight(l, dup.dst.unit, c, net.weight(l, dup.src.unit, c));
    }
    net.set_bias(l, dup.dst.unit, net.bias(l, dup.src.unit));
    for (int r = 0; r < net.fan_out(l + 1); ++r) {
        net.set_weight(l + 1, r, dup.dst.unit, net.weight(l + 1, r, dup.src.unit));
    }
    return net;
}

}  // namespace canonlab
