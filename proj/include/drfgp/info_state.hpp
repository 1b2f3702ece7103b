#ifndef DRFGP_INFO_STATE_HPP
#define DRFGP_INFO_STATE_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <utility>

#include "drfgp/kernel.hpp"

namespace drfgp {

/// Data-only contributions of one batch to the global information quantities:
/// scatter = Phi Phi^T / obs_var, info = Phi y / obs_var. Additive across
/// batches and across agents; zero for an empty batch.
struct LocalStats {
  Eigen::MatrixXd scatter;  // 2J x 2J, symmetric PSD
  Eigen::VectorXd info;     // 2J

  static LocalStats zero(int dim);
  LocalStats& operator+=(const LocalStats& other);
};

struct Predictive {
  double mean = 0.0;
  double variance = 0.0;  // includes observation noise, so >= obs_var
};

/// Information-form Gaussian over the feature weights: precision matrix D and
/// information vector eta = D mu. Starts at the prior (D = I/prior_var,
/// eta = 0) and grows by adding fused statistics. Keeps a Cholesky factor of
/// D in sync so prediction is two triangular solves.
class InfoState {
 public:
  InfoState(int dim, double prior_var, double obs_var);

  const Eigen::MatrixXd& precision() const { return precision_; }
  const Eigen::VectorXd& info_vec() const { return info_; }
  double prior_var() const { return prior_var_; }
  double obs_var() const { return obs_var_; }
  int dim() const { return static_cast<int>(info_.size()); }

  /// precision += scatter_sum, info_vec += info_sum. Symmetry is re-enforced
  /// by averaging with the transpose; throws NumericalError if the result is
  /// no longer positive definite.
  void apply_fused_stats(const Eigen::Ref<const Eigen::MatrixXd>& scatter_sum,
                         const Eigen::Ref<const Eigen::VectorXd>& info_sum);
  void apply_fused_stats(const LocalStats& stats) {
    apply_fused_stats(stats.scatter, stats.info);
  }

  /// (mean, covariance) of the weight posterior via an SPD solve, never an
  /// explicit inverse.
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> posterior_moments() const;

  Predictive predict(const RffBasis& basis,
                     const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Predictive predict_features(
      const Eigen::Ref<const Eigen::VectorXd>& features) const;

 private:
  void refactor();  // recompute the Cholesky factor, throws NumericalError

  Eigen::MatrixXd precision_;
  Eigen::VectorXd info_;
  double prior_var_;
  double obs_var_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
};

/// Batch statistics for inputs X (rows are points) and targets y.
LocalStats local_stats(const RffBasis& basis,
                       const Eigen::Ref<const Eigen::MatrixXd>& X,
                       const Eigen::Ref<const Eigen::VectorXd>& y,
                       double obs_var);

double log_predictive_density(double y, const Predictive& pred);

}  // namespace drfgp

#endif  // DRFGP_INFO_STATE_HPP
