#pragma once

#include <string>

#include "canonlab/canonical_solver.hpp"
#include "canonlab/disparity.hpp"
#include "canonlab/experiment.hpp"
#include "canonlab/trainer.hpp"

namespace canonlab {

/// Shortest text that round-trips the double bit-exactly (17 significant digits).
std::string format_double(double v);

// ---- network JSON ---------------------------------------------------------
// {"input_dim": K, "hidden_sizes": [...], "activation": "...", "weights": [...]}
// Weights are written with 17 significant digits; the round trip is bit-exact
// for finite doubles.

std::string serialize_network(const MlpNetwork& net);
MlpNetwork parse_network(const std::string& json_text);
void save_network(const MlpNetwork& net, const std::string& path);
MlpNetwork load_network(const std::string& path);

// ---- CSV / JSON dumps -----------------------------------------------------

/// Columns k_1..k_K, re, im; one row per index in enumeration order.
std::string coeffs_to_csv(const CanonicalCoeffs& coeffs);

/// Columns m, k_1..k_K, re, im.
std::string disparity_to_csv(const DisparityMatrix& H);

/// {"singular_values": [...], "numerical_rank": r, "tolerance_used": t}
std::string rank_report_to_json(const RankReport& report);

/// Header step,epoch,minibatch_loss,full_loss,grad_norm_literal,
/// grad_norm_canonical,rank,sigma_ratio,chain_residual; absent fields empty.
std::string trace_to_csv(const TrainingTrace& trace);

/// {"solver": ..., "final_loss": ..., "iterations": ..., "coeffs_file": ...}
std::string fit_result_to_json(const CanonicalFitResult& fit, const std::string& coeffs_file);

/// Header x_1..x_K,y; one sample per row.
std::string dataset_to_csv(const TrainingSet& data);
TrainingSet parse_dataset_csv(const std::string& text);
TrainingSet load_dataset_csv(const std::string& path);

std::string census_to_csv(const CensusResult& census);

// ---- experiment config ----------------------------------------------------

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

std::string report_to_json(const ExperimentReport& report);

// ---- helpers ----------------------------------------------------------------

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace canonlab
