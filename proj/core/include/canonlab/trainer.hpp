#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "canonlab/dataset.hpp"
#include "canonlab/disparity.hpp"
#include "canonlab/mlp.hpp"

namespace canonlab {

struct Architecture {
    int input_dim = 1;
    std::vector<int> hidden_sizes;
    Activation activation = Activation::tanh;
};

enum class InitKind { uniform_fan_in, center_cutting };

InitKind init_kind_from_string(const std::string& name);
std::string to_string(InitKind k);

/// uniform_fan_in: weights uniform in +-scale*sqrt(3/fan_in), biases 0.
/// center_cutting: weights as above, then every hidden-unit bias is set to
/// -(w . c) + u with c = (0.5, ..., 0.5) and u uniform in +-0.1, so each
/// hyperplane cuts its input box near the center.
struct InitScheme {
    InitKind kind = InitKind::uniform_fan_in;
    double scale = 1.0;
    std::string bias_rule() const;
};

MlpNetwork init_random(const Architecture& arch, const InitScheme& scheme, std::uint64_t seed);

/// Step sizes follow h_k = lr0 / (1 + decay*k).
struct TrainSchedule {
    int epochs = 1;
    int minibatch_size = 1;
    double lr0 = 0.01;
    double decay = 0.0;
    std::uint64_t seed = 0;
};

/// Canonical-space instrumentation computed every `cadence` steps. Rank,
/// canonical-gradient and chain-residual monitoring run only when the index
/// set and grid are present.
struct MonitorConfig {
    int cadence = 50;
    std::optional<FrequencyIndexSet> index_set;
    std::optional<QuadratureGrid> grid;
    double rank_rel_tol = 1e-10;
};

struct TraceRow {
    long step = 0;
    int epoch = 0;
    std::optional<double> minibatch_loss;
    std::optional<double> full_loss;
    std::optional<double> grad_norm_literal;
    std::optional<double> grad_norm_canonical;
    std::optional<int> rank;
    std::optional<double> sigma_ratio;
    std::optional<double> chain_residual;
};

struct TrainingTrace {
    std::vector<TraceRow> rows;
};

enum class TrainStatus { completed, diverged };

struct TrainResult {
    MlpNetwork net;
    TrainingTrace trace;
    TrainStatus status = TrainStatus::completed;
};

/// Minibatch SGD with seeded per-epoch shuffling. Monitored state is recorded
/// at w^(k) before the k-th update for k % cadence == 0 and once more for the
/// final weights. A non-finite loss aborts training; the trace up to the
/// failure is returned with status diverged.
TrainResult sgd_train(MlpNetwork net, const TrainingSet& data, Loss loss,
                      const TrainSchedule& schedule, const MonitorConfig& monitor = {});

struct KillNeurons {
    std::vector<NeuronId> targets;
};
struct DuplicateNeuron {
    NeuronId src;
    NeuronId dst;
};
using DegenerateMode = std::variant<KillNeurons, DuplicateNeuron>;

/// kill: sets each target ReLU bias to -(sum |incoming weights|) - 1, which
/// keeps the unit inactive on the whole input box (ReLU only; saturating
/// activations have no hard-off region and are rejected).
/// duplicate: copies src's incoming and outgoing weights onto dst.
MlpNetwork make_degenerate(MlpNetwork net, const DegenerateMode& mode);

}  // namespace canonlab
