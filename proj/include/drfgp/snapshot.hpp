#ifndef DRFGP_SNAPSHOT_HPP
#define DRFGP_SNAPSHOT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "drfgp/agent.hpp"

namespace drfgp {

/// Full dump of the network state at one training step: enough to resume a
/// run or audit what each agent believes. Versioned plain text.
struct Snapshot {
  std::uint64_t config_hash = 0;
  int step = 0;
  int num_agents = 0;
  int num_models = 0;
  int num_features = 0;

  struct ModelState {
    Eigen::MatrixXd precision;
    Eigen::VectorXd info_vec;
  };
  struct AgentState {
    std::vector<ModelState> models;
    Eigen::VectorXd log_weights;
  };
  std::vector<AgentState> agents;
};

void write_snapshot(const std::string& path, std::uint64_t config_hash,
                    int step, const std::vector<Agent>& agents);
Snapshot read_snapshot(const std::string& path);

/// Human-readable digest: header fields plus per-agent weights and per-model
/// precision trace / information norm.
std::string snapshot_summary(const Snapshot& snapshot);

}  // namespace drfgp

#endif  // DRFGP_SNAPSHOT_HPP
