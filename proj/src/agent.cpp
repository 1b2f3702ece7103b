#include "drfgp/agent.hpp"

#include <string>
#include <utility>

#include "drfgp/consensus.hpp"
#include "drfgp/errors.hpp"

namespace drfgp {

Agent::Agent(int agent_id, int num_agents,
             std::vector<std::shared_ptr<const RffBasis>> bases,
             double prior_var, double obs_var)
    : agent_id_(agent_id),
      num_agents_(num_agents),
      bases_(std::move(bases)),
      log_weights_(std::max<int>(1, static_cast<int>(bases_.size()))) {
  if (agent_id_ < 0 || agent_id_ >= num_agents_) {
    throw InvalidSpecError("agent id " + std::to_string(agent_id_) +
                           " out of range for " + std::to_string(num_agents_) +
                           " agents");
  }
  if (bases_.empty()) {
    throw InvalidSpecError("agent needs at least one model");
  }
  const int J = bases_.front()->num_features();
  const int dim = bases_.front()->input_dim();
  for (const auto& b : bases_) {
    if (b->num_features() != J || b->input_dim() != dim) {
      throw ShapeError("all models must share feature count and input dimension");
    }
  }
  states_.reserve(bases_.size());
  for (std::size_t m = 0; m < bases_.size(); ++m) {
    states_.emplace_back(2 * J, prior_var, obs_var);
  }
}

StepResult Agent::predict_with(const Eigen::Ref<const Eigen::VectorXd>& x,
                               double target, bool have_target) const {
  const int M = num_models();
  StepResult result;
  result.model_predictions.reserve(M);
  result.log_liks = Eigen::VectorXd::Zero(M);
  for (int m = 0; m < M; ++m) {
    Predictive pred = states_[m].predict(*bases_[m], x);
    if (have_target) {
      result.log_liks[m] = log_predictive_density(target, pred);
    }
    result.model_predictions.push_back(pred);
  }
  MixturePredictive mix = mixture_predict(result.model_predictions, weights());
  result.mixture_mean = mix.mean();
  result.mixture_variance = mix.variance();
  return result;
}

StepResult Agent::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return predict_with(x, 0.0, /*have_target=*/false);
}

LocalPhaseResult Agent::local_phase(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (X.rows() != y.size()) {
    throw ShapeError("local_phase: " + std::to_string(X.rows()) +
                     " inputs but " + std::to_string(y.size()) + " targets");
  }
  LocalPhaseResult result;
  result.per_point.reserve(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    result.per_point.push_back(predict_with(X.row(i).transpose(), y[i], true));
  }
  result.stats.reserve(static_cast<std::size_t>(num_models()));
  for (int m = 0; m < num_models(); ++m) {
    result.stats.push_back(local_stats(*bases_[m], X, y, states_[m].obs_var()));
  }
  return result;
}

LocalPhaseResult Agent::local_phase(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    double y) const {
  Eigen::MatrixXd X(1, x.size());
  X.row(0) = x.transpose();
  Eigen::VectorXd targets(1);
  targets[0] = y;
  return local_phase(X, targets);
}

int Agent::payload_size(int num_models, int num_features) {
  const int dim = 2 * num_features;
  return num_models * (packed_symmetric_size(dim) + dim) + num_models;
}

Eigen::VectorXd Agent::pack_payload(
    const std::vector<LocalStats>& stats,
    const Eigen::Ref<const Eigen::VectorXd>& log_liks) const {
  const int M = num_models();
  const int dim = 2 * num_features();
  if (static_cast<int>(stats.size()) != M || log_liks.size() != M) {
    throw ShapeError("pack_payload: expected " + std::to_string(M) +
                     " stat blocks and log-likelihoods");
  }
  const int tri = packed_symmetric_size(dim);
  Eigen::VectorXd payload(payload_size(M, num_features()));
  int offset = 0;
  for (int m = 0; m < M; ++m) {
    pack_symmetric(stats[m].scatter, payload.segment(offset, tri));
    offset += tri;
    payload.segment(offset, dim) = stats[m].info;
    offset += dim;
  }
  payload.segment(offset, M) = log_liks;
  return payload;
}

Eigen::VectorXd Agent::payload_log_liks(
    const Eigen::Ref<const Eigen::VectorXd>& payload, int num_models,
    int num_features) {
  if (payload.size() != payload_size(num_models, num_features)) {
    throw ShapeError("payload has unexpected length " +
                     std::to_string(payload.size()));
  }
  return payload.tail(num_models);
}

void Agent::fuse_phase(const Eigen::Ref<const Eigen::VectorXd>& fused_payload) {
  const int M = num_models();
  const int dim = 2 * num_features();
  if (fused_payload.size() != payload_size(M, num_features())) {
    throw ShapeError("fuse_phase: payload has length " +
                     std::to_string(fused_payload.size()) + ", expected " +
                     std::to_string(payload_size(M, num_features())));
  }
  const int tri = packed_symmetric_size(dim);
  const double scale = static_cast<double>(num_agents_);
  Eigen::MatrixXd scatter(dim, dim);
  int offset = 0;
  for (int m = 0; m < M; ++m) {
    unpack_symmetric(fused_payload.segment(offset, tri), scatter);
    offset += tri;
    try {
      states_[m].apply_fused_stats(scale * scatter,
                                   scale * fused_payload.segment(offset, dim));
    } catch (const NumericalError& e) {
      throw NumericalError("agent " + std::to_string(agent_id_) + ", model " +
                           std::to_string(m) + ": " + e.what());
    }
    offset += dim;
  }
}

void Agent::apply_bma(const Eigen::Ref<const Eigen::VectorXd>& log_liks) {
  log_weights_.update(log_liks);
}

}  // namespace drfgp
