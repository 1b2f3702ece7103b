#ifndef DRFGP_AGENT_HPP
#define DRFGP_AGENT_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "drfgp/ensemble.hpp"
#include "drfgp/info_state.hpp"
#include "drfgp/kernel.hpp"

namespace drfgp {

/// Everything an agent reports about one observation: the per-model
/// predictives and mixture formed before any update, and the per-model log
/// predictive densities of the target, which feed the weight update.
struct StepResult {
  std::vector<Predictive> model_predictions;
  Eigen::VectorXd log_liks;
  double mixture_mean = 0.0;
  double mixture_variance = 0.0;
};

struct LocalPhaseResult {
  std::vector<LocalStats> stats;       // one per model, data-only
  std::vector<StepResult> per_point;   // one per batch row
};

/// One agent of the network: M (basis, information state) pairs sharing the
/// input dimension and feature count, plus the model log-weights. The local
/// phase never sees other agents; the fuse phase never sees raw data. The
/// only thing that crosses the network is the flat consensus payload.
class Agent {
 public:
  Agent(int agent_id, int num_agents,
        std::vector<std::shared_ptr<const RffBasis>> bases, double prior_var,
        double obs_var);

  int id() const { return agent_id_; }
  int num_agents() const { return num_agents_; }
  int num_models() const { return static_cast<int>(bases_.size()); }
  int num_features() const { return bases_.front()->num_features(); }
  const RffBasis& basis(int model) const { return *bases_[model]; }
  const InfoState& state(int model) const { return states_[model]; }
  const LogWeights& log_weights() const { return log_weights_; }
  Eigen::VectorXd weights() const { return normalize(log_weights_); }

  /// Predictions from the pre-update posterior plus the batch statistics.
  /// Does not mutate the agent.
  LocalPhaseResult local_phase(const Eigen::Ref<const Eigen::MatrixXd>& X,
                               const Eigen::Ref<const Eigen::VectorXd>& y) const;
  LocalPhaseResult local_phase(const Eigen::Ref<const Eigen::VectorXd>& x,
                               double y) const;

  /// Apply the post-consensus payload: per model, precision += N * scatter
  /// and info_vec += N * info. The payload layout is the one produced by
  /// pack_payload; the log-likelihood tail is ignored here.
  void fuse_phase(const Eigen::Ref<const Eigen::VectorXd>& fused_payload);

  /// Weight update; `log_liks` is either the agent's own vector (local BMA)
  /// or N times the consensus average (independent-consensus BMA).
  void apply_bma(const Eigen::Ref<const Eigen::VectorXd>& log_liks);

  /// Predictive of each model plus the mixture at a test input, using the
  /// current posterior and weights.
  StepResult predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  // Payload layout: per model the packed upper triangle of the scatter matrix
  // followed by the info vector, then the M log-likelihoods.
  static int payload_size(int num_models, int num_features);
  Eigen::VectorXd pack_payload(const std::vector<LocalStats>& stats,
                               const Eigen::Ref<const Eigen::VectorXd>& log_liks) const;
  static Eigen::VectorXd payload_log_liks(
      const Eigen::Ref<const Eigen::VectorXd>& payload, int num_models,
      int num_features);

 private:
  StepResult predict_with(const Eigen::Ref<const Eigen::VectorXd>& x,
                          double target, bool have_target) const;

  int agent_id_;
  int num_agents_;
  std::vector<std::shared_ptr<const RffBasis>> bases_;
  std::vector<InfoState> states_;
  LogWeights log_weights_;
};

}  // namespace drfgp

#endif  // DRFGP_AGENT_HPP
