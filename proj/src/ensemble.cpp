#include "drfgp/ensemble.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "drfgp/errors.hpp"

namespace drfgp {

namespace {
constexpr double kWeightFloor = 1e-12;
}

LogWeights::LogWeights(int num_models) {
  if (num_models < 1) {
    throw InvalidSpecError("LogWeights needs at least one model");
  }
  values_ = Eigen::VectorXd::Zero(num_models);
}

LogWeights::LogWeights(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() < 1) {
    throw InvalidSpecError("LogWeights needs at least one model");
  }
}

Eigen::VectorXd normalize(const LogWeights& lw) {
  const Eigen::VectorXd& v = lw.values();
  const double shift = v.maxCoeff();
  if (!std::isfinite(shift)) {
    throw NumericalError("normalize: all log-weights are degenerate");
  }
  Eigen::VectorXd w = (v.array() - shift).exp();
  return w / w.sum();
}

void LogWeights::update(const Eigen::Ref<const Eigen::VectorXd>& log_liks) {
  if (log_liks.size() != values_.size()) {
    throw ShapeError("LogWeights::update: " + std::to_string(log_liks.size()) +
                     " log-likelihoods for " + std::to_string(values_.size()) +
                     " models");
  }
  values_ += log_liks;
  // Floor in probability space, then store logs so every entry stays finite.
  Eigen::VectorXd w = normalize(*this);
  w = w.cwiseMax(kWeightFloor);
  w /= w.sum();
  values_ = w.array().log();
}

LogWeights bma_local_update(const LogWeights& lw,
                            const Eigen::Ref<const Eigen::VectorXd>& log_liks) {
  LogWeights out = lw;
  out.update(log_liks);
  return out;
}

LogWeights bma_consensus_update(
    const LogWeights& lw,
    const Eigen::Ref<const Eigen::VectorXd>& summed_log_liks) {
  LogWeights out = lw;
  out.update(summed_log_liks);
  return out;
}

MixturePredictive::MixturePredictive(std::vector<Predictive> components,
                                     Eigen::VectorXd weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (weights_.size() != static_cast<Eigen::Index>(components_.size()) ||
      components_.empty()) {
    throw ShapeError("mixture_predict: " + std::to_string(weights_.size()) +
                     " weights for " + std::to_string(components_.size()) +
                     " models");
  }
  mean_ = 0.0;
  for (std::size_t m = 0; m < components_.size(); ++m) {
    mean_ += weights_[static_cast<Eigen::Index>(m)] * components_[m].mean;
  }
  double second_moment = 0.0;
  for (std::size_t m = 0; m < components_.size(); ++m) {
    const Predictive& c = components_[m];
    second_moment += weights_[static_cast<Eigen::Index>(m)] *
                     (c.variance + c.mean * c.mean);
  }
  variance_ = second_moment - mean_ * mean_;
}

double MixturePredictive::log_density(double y) const {
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd terms(weights_.size());
  for (Eigen::Index m = 0; m < weights_.size(); ++m) {
    const double lp = log_predictive_density(y, components_[m]);
    terms[m] = (weights_[m] > 0.0)
                   ? std::log(weights_[m]) + lp
                   : -std::numeric_limits<double>::infinity();
    best = std::max(best, terms[m]);
  }
  if (!std::isfinite(best)) {
    throw NumericalError("mixture density: no component has positive weight");
  }
  return best + std::log((terms.array() - best).exp().sum());
}

double MixturePredictive::density(double y) const {
  return std::exp(log_density(y));
}

MixturePredictive mixture_predict(std::vector<Predictive> models,
                                  Eigen::VectorXd weights) {
  return MixturePredictive(std::move(models), std::move(weights));
}

}  // namespace drfgp
