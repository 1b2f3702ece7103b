#ifndef DRFGP_CONFIG_HPP
#define DRFGP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "drfgp/consensus.hpp"
#include "drfgp/ensemble.hpp"

namespace drfgp {

std::string to_string(WeightScheme scheme);
std::string to_string(BmaMode mode);
WeightScheme weight_scheme_from_string(const std::string& s);
BmaMode bma_mode_from_string(const std::string& s);

/// Full description of one experiment. Serializes to a flat key = value file;
/// every key can also be set individually (CLI flags override file values).
struct ExperimentConfig {
  int num_agents = 5;
  double edge_probability = 0.25;
  int consensus_rounds = 10;
  WeightScheme weight_scheme = WeightScheme::Metropolis;
  // Per-model lengthscales; a single value is broadcast to the input
  // dimension when the dataset is loaded.
  std::vector<std::vector<double>> models = {{0.1}, {1.0}, {10.0}};
  int num_features = 50;
  double prior_var = 1.0;
  double obs_var = 1e-2;
  std::uint64_t seed = 0;
  BmaMode bma_mode = BmaMode::IndependentConsensus;
  std::string dataset;
  int holdout_size = 0;
  bool standardize = true;
  bool shuffle = false;
  int snapshot_every = 0;  // training steps between snapshots; 0 disables
  std::string snapshot_path;

  // dataset schema
  std::string target_column = "last";  // name, 0-based index, or "last"
  char delimiter = ',';
  bool has_header = true;

  void validate() const;  // throws InvalidSpecError
  void set(const std::string& key, const std::string& value);  // throws SchemaError/ParseError

  /// Canonical serialization; parsing it back reproduces the config.
  std::string to_text() const;
  std::uint64_t hash() const;  // FNV-1a over the canonical text
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
void write_config_file(const ExperimentConfig& config, const std::string& path);

}  // namespace drfgp

#endif  // DRFGP_CONFIG_HPP
