#ifndef DRFGP_RUNNER_HPP
#define DRFGP_RUNNER_HPP

#include <functional>
#include <vector>

#include "drfgp/config.hpp"
#include "drfgp/dataset.hpp"
#include "drfgp/metrics.hpp"

namespace drfgp {

/// Round-robin split: global row i goes to agent i mod N at step i / N.
/// Returns the row indices of each agent's ordered stream.
std::vector<std::vector<int>> partition_stream(int num_rows, int num_agents);

/// Per-step probe for tests and diagnostics: (completed step, payload length
/// per agent, seconds spent in the step).
using StepObserver = std::function<void(int step, int payload_size, double seconds)>;

/// Run the full experiment: seed-derived graph and bases, the per-step
/// local / consensus / fuse / weight-update cycle over the training stream,
/// then a frozen-posterior pass over the holdout suffix. Deterministic for a
/// fixed (config, dataset): two runs produce identical logs.
MetricsLog run_experiment(const ExperimentConfig& config, const Dataset& dataset,
                          const StepObserver& observer = nullptr);

/// Convenience wrapper: load the dataset named by the config (applying its
/// schema and standardization choice), then run.
MetricsLog run_experiment_from_config(const ExperimentConfig& config);

}  // namespace drfgp

#endif  // DRFGP_RUNNER_HPP
