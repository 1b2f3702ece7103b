#ifndef DRFGP_ENSEMBLE_HPP
#define DRFGP_ENSEMBLE_HPP

#include <Eigen/Dense>
#include <vector>

#include "drfgp/info_state.hpp"

namespace drfgp {

enum class BmaMode {
  Local,                // each agent weighs models with its private data only
  IndependentConsensus, // weighs with the consensus estimate of the network sum
};

/// Unnormalized model log-weights. Updates add per-model log predictive
/// densities; normalized weights are floored at 1e-12 so a model can always
/// recover from early transients.
class LogWeights {
 public:
  explicit LogWeights(int num_models);
  explicit LogWeights(Eigen::VectorXd values);

  int num_models() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }

  /// Add log-likelihoods, then floor. Used by both BMA variants.
  void update(const Eigen::Ref<const Eigen::VectorXd>& log_liks);

 private:
  Eigen::VectorXd values_;
};

/// Max-shifted softmax of the log-weights; sums to one. Throws NumericalError
/// when no entry is finite.
Eigen::VectorXd normalize(const LogWeights& lw);

/// Weight update from the agent's own observation.
LogWeights bma_local_update(const LogWeights& lw,
                            const Eigen::Ref<const Eigen::VectorXd>& log_liks);

/// Weight update from the consensus estimate of the network-wide
/// log-likelihood sum (N times the consensus average).
LogWeights bma_consensus_update(
    const LogWeights& lw,
    const Eigen::Ref<const Eigen::VectorXd>& summed_log_liks);

/// Weighted mixture of Gaussian predictives. Holds what it needs to report
/// the point prediction and to evaluate the mixture density on demand.
class MixturePredictive {
 public:
  MixturePredictive(std::vector<Predictive> components,
                    Eigen::VectorXd weights);

  double mean() const { return mean_; }
  double variance() const { return variance_; }  // law of total variance
  double log_density(double y) const;
  double density(double y) const;
  const std::vector<Predictive>& components() const { return components_; }

 private:
  std::vector<Predictive> components_;
  Eigen::VectorXd weights_;
  double mean_;
  double variance_;
};

MixturePredictive mixture_predict(std::vector<Predictive> models,
                                  Eigen::VectorXd weights);

}  // namespace drfgp

#endif  // DRFGP_ENSEMBLE_HPP
