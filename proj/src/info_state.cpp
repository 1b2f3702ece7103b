#include "drfgp/info_state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "drfgp/errors.hpp"

namespace drfgp {

LocalStats LocalStats::zero(int dim) {
  return LocalStats{Eigen::MatrixXd::Zero(dim, dim), Eigen::VectorXd::Zero(dim)};
}

LocalStats& LocalStats::operator+=(const LocalStats& other) {
  scatter += other.scatter;
  info += other.info;
  return *this;
}

InfoState::InfoState(int dim, double prior_var, double obs_var)
    : prior_var_(prior_var), obs_var_(obs_var) {
  if (dim < 1) {
    throw InvalidSpecError("InfoState dimension must be >= 1");
  }
  if (!(prior_var > 0.0) || !(obs_var > 0.0)) {
    throw InvalidSpecError("prior_var and obs_var must be positive");
  }
  precision_ = Eigen::MatrixXd::Identity(dim, dim) / prior_var_;
  info_ = Eigen::VectorXd::Zero(dim);
  refactor();
}

void InfoState::refactor() {
  chol_.compute(precision_);
  if (chol_.info() != Eigen::Success) {
    throw NumericalError("precision matrix is no longer positive definite");
  }
}

void InfoState::apply_fused_stats(
    const Eigen::Ref<const Eigen::MatrixXd>& scatter_sum,
    const Eigen::Ref<const Eigen::VectorXd>& info_sum) {
  const int n = dim();
  if (scatter_sum.rows() != n || scatter_sum.cols() != n ||
      info_sum.size() != n) {
    throw ShapeError("apply_fused_stats: statistics must have dimension " +
                     std::to_string(n));
  }
  precision_ += scatter_sum;
  precision_ = ((precision_ + precision_.transpose()) * 0.5).eval();
  info_ += info_sum;
  refactor();
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> InfoState::posterior_moments()
    const {
  Eigen::VectorXd mean = chol_.solve(info_);
  Eigen::MatrixXd cov = chol_.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  cov = ((cov + cov.transpose()) * 0.5).eval();
  return {std::move(mean), std::move(cov)};
}

Predictive InfoState::predict_features(
    const Eigen::Ref<const Eigen::VectorXd>& features) const {
  if (features.size() != dim()) {
    throw ShapeError("predict: feature vector has length " +
                     std::to_string(features.size()) + ", state expects " +
                     std::to_string(dim()));
  }
  // mean = phi' D^-1 eta, var = phi' D^-1 phi + obs_var, via one factor.
  const Eigen::MatrixXd& L = chol_.matrixL();
  Eigen::VectorXd a = L.triangularView<Eigen::Lower>().solve(features);
  Eigen::VectorXd b = L.triangularView<Eigen::Lower>().solve(info_);
  Predictive pred;
  pred.mean = a.dot(b);
  pred.variance = a.squaredNorm() + obs_var_;
  return pred;
}

Predictive InfoState::predict(const RffBasis& basis,
                              const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (basis.feature_dim() != dim()) {
    throw ShapeError("predict: basis feature dimension " +
                     std::to_string(basis.feature_dim()) +
                     " does not match state dimension " + std::to_string(dim()));
  }
  return predict_features(basis.feature_map(x));
}

LocalStats local_stats(const RffBasis& basis,
                       const Eigen::Ref<const Eigen::MatrixXd>& X,
                       const Eigen::Ref<const Eigen::VectorXd>& y,
                       double obs_var) {
  if (X.rows() != y.size()) {
    throw ShapeError("local_stats: " + std::to_string(X.rows()) +
                     " inputs but " + std::to_string(y.size()) + " targets");
  }
  if (!(obs_var > 0.0)) {
    throw InvalidSpecError("obs_var must be positive");
  }
  const int dim = basis.feature_dim();
  LocalStats stats = LocalStats::zero(dim);
  if (X.rows() == 0) {
    return stats;
  }
  if (X.cols() != basis.input_dim()) {
    throw ShapeError("local_stats: inputs have dimension " +
                     std::to_string(X.cols()) + ", basis expects " +
                     std::to_string(basis.input_dim()));
  }
  Eigen::VectorXd phi(dim);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    basis.feature_map_into(X.row(i).transpose(), phi);
    stats.scatter.noalias() += phi * phi.transpose() / obs_var;
    stats.info.noalias() += phi * (y[i] / obs_var);
  }
  return stats;
}

double log_predictive_density(double y, const Predictive& pred) {
  if (!(pred.variance > 0.0)) {
    throw InvalidSpecError("predictive variance must be positive");
  }
  const double diff = y - pred.mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * pred.variance) -
         0.5 * diff * diff / pred.variance;
}

}  // namespace drfgp
