#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "canonlab/canonical_solver.hpp"
#include "canonlab/trainer.hpp"

namespace canonlab {

enum class DataKind { planted_fourier, random_labels };

DataKind data_kind_from_string(const std::string& name);
std::string to_string(DataKind k);

/// One experiment, one JSON document. Field names match the on-disk schema
/// exactly; see README for the full format. Invariants (N >= T, Nyquist,
/// T >= 1) are enforced at load time.
struct ExperimentConfig {
    std::uint64_t seed = 0;

    struct Network {
        int input_dim = 1;
        std::vector<int> hidden_sizes;
        std::string activation = "tanh";
        friend bool operator==(const Network&, const Network&) = default;
    } network;

    struct Data {
        std::string kind = "random_labels";
        int T = 1;
        std::uint64_t label_seed = 0;
        int coeff_bandwidth = 1;
        friend bool operator==(const Data&, const Data&) = default;
    } data;

    struct Canonical {
        std::vector<int> per_dim_limits;
        std::vector<int> grid_points_per_dim;
        friend bool operator==(const Canonical&, const Canonical&) = default;
    } canonical;

    struct Train {
        int epochs = 1;
        int minibatch = 1;
        double lr0 = 0.01;
        double decay = 0.0;
        friend bool operator==(const Train&, const Train&) = default;
    } train;

    struct Monitor {
        int cadence = 50;
        double rank_rel_tol = 1e-10;
        double grad_tol = 1e-3;
        friend bool operator==(const Monitor&, const Monitor&) = default;
    } monitor;

    std::string output_dir = ".";

    /// Optional degeneracy injection applied right after initialization.
    struct Degenerate {
        bool kill_all_hidden = false;
        std::vector<NeuronId> kill;
        std::vector<std::pair<NeuronId, NeuronId>> duplicate;
        bool any() const { return kill_all_hidden || !kill.empty() || !duplicate.empty(); }
        friend bool operator==(const Degenerate&, const Degenerate&) = default;
    } degenerate;

    /// Weight initialization scheme ("uniform_fan_in" | "center_cutting").
    std::string init = "uniform_fan_in";

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    Architecture architecture() const;
    FrequencyIndexSet index_set() const;
    QuadratureGrid grid() const;
    void validate() const;  // throws ConfigError
};

/// Inputs drawn uniformly in [0,1]^K, resampled until the smallest pairwise
/// distance is >= 1e-6. planted_fourier labels come from a seeded Hermitian
/// coefficient vector with shells <= bandwidth; random_labels are uniform in
/// [-1, 1].
TrainingSet gen_synthetic_dataset(DataKind kind, int T, int input_dim, std::uint64_t seed,
                                  int bandwidth);

/// The coefficient vector behind planted_fourier labels for a given seed,
/// exposed so recovery can be checked exactly.
CanonicalCoeffs planted_coefficients(int input_dim, int bandwidth, std::uint64_t seed);

struct ExperimentSummary {
    double final_loss = 0.0;
    int final_rank = 0;
    int rank_columns = 0;  // N
    std::string verdict;
    double literal_grad_norm = 0.0;
    double canonical_grad_norm = 0.0;
    int dead_count = 0;
    int duplicated_count = 0;
    double solver_final_loss = 0.0;
    double solver_condition_number = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string status;  // "success" | "failed"
    std::string error;
    std::string trace_file;
    std::string coeffs_file;
    std::string solver_coeffs_file;
    std::string summary_file;
    std::vector<std::string> plot_files;
    ExperimentSummary summary;
    TrainStatus train_status = TrainStatus::completed;
};

/// Full pipeline: init, optional degeneracy injection, monitored SGD, final
/// stationary-point classification, and a canonical-space direct solve for
/// comparison. Writes trace CSV, coefficient dumps, loss/rank SVGs and a JSON
/// summary under config.output_dir. Failures are captured in the report;
/// partial artifacts are kept.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct CensusRow {
    int index = 0;
    std::uint64_t seed = 0;
    int rank = 0;
    bool full_rank = false;
    double sigma_ratio = 0.0;
    int dead_count = 0;
    int duplicated_count = 0;
    std::string status;  // "ok" | "failed"
};

struct CensusResult {
    std::vector<CensusRow> rows;
    int columns = 0;  // N
    double full_rank_frequency = 0.0;
};

/// Per-seed rank census of freshly initialized networks: rank of H, singular
/// value ratio, dead and duplicated counts. Per-seed failures become failed
/// rows, never aborts.
CensusResult run_init_rank_census(const Architecture& arch, const InitScheme& scheme, int n_seeds,
                                  std::uint64_t base_seed, const FrequencyIndexSet& idx,
                                  const QuadratureGrid& grid, double rank_rel_tol);

}  // namespace canonlab
