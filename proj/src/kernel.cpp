#include "drfgp/kernel.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "drfgp/errors.hpp"
#include "drfgp/rng.hpp"

namespace drfgp {

void KernelSpec::validate() const {
  if (lengthscales.size() < 1) {
    throw InvalidSpecError("kernel spec needs at least one lengthscale");
  }
  for (Eigen::Index d = 0; d < lengthscales.size(); ++d) {
    if (!(lengthscales[d] > 0.0) || !std::isfinite(lengthscales[d])) {
      throw InvalidSpecError("lengthscale " + std::to_string(d) +
                             " must be a positive finite real, got " +
                             std::to_string(lengthscales[d]));
    }
  }
}

KernelSpec KernelSpec::se_ard(Eigen::VectorXd lengthscales) {
  KernelSpec spec;
  spec.lengthscales = std::move(lengthscales);
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::se_iso(double lengthscale, int dim) {
  return se_ard(Eigen::VectorXd::Constant(dim, lengthscale));
}

double exact_kernel(const KernelSpec& spec,
                    const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != spec.dim() || y.size() != spec.dim()) {
    throw ShapeError("exact_kernel: inputs must have dimension " +
                     std::to_string(spec.dim()));
  }
  const double q = ((x - y).array() / spec.lengthscales.array()).square().sum();
  return std::exp(-q);
}

RffBasis::RffBasis(KernelSpec spec, int num_features, std::uint64_t seed,
                   FrequencySampler sampler)
    : spec_(std::move(spec)), num_features_(num_features), seed_(seed) {
  spec_.validate();
  if (num_features_ < 1) {
    throw InvalidSpecError("num_features must be >= 1, got " +
                           std::to_string(num_features_));
  }
  (void)sampler;  // IidGaussian is the only strategy

  // The spectral density of exp(-d^2/lambda^2) is Gaussian with per-coordinate
  // variance 2/lambda_d^2, so phi(x).phi(x') is an unbiased kernel estimate.
  const int dim = spec_.dim();
  std::mt19937_64 gen(seed_);
  frequencies_.resize(num_features_, dim);
  for (int j = 0; j < num_features_; ++j) {
    for (int d = 0; d < dim; ++d) {
      frequencies_(j, d) =
          standard_normal(gen) * std::numbers::sqrt2 / spec_.lengthscales[d];
    }
  }
}

void RffBasis::feature_map_into(const Eigen::Ref<const Eigen::VectorXd>& x,
                                Eigen::Ref<Eigen::VectorXd> out) const {
  if (x.size() != input_dim()) {
    throw ShapeError("feature_map: input has dimension " +
                     std::to_string(x.size()) + ", basis expects " +
                     std::to_string(input_dim()));
  }
  if (out.size() != feature_dim()) {
    throw ShapeError("feature_map: output buffer has length " +
                     std::to_string(out.size()) + ", expected " +
                     std::to_string(feature_dim()));
  }
  const Eigen::VectorXd proj = frequencies_ * x;
  const double scale = 1.0 / std::sqrt(static_cast<double>(num_features_));
  for (int j = 0; j < num_features_; ++j) {
    out[2 * j] = std::sin(proj[j]) * scale;
    out[2 * j + 1] = std::cos(proj[j]) * scale;
  }
}

Eigen::VectorXd RffBasis::feature_map(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(feature_dim());
  feature_map_into(x, out);
  return out;
}

RffBasis sample_frequencies(const KernelSpec& spec, int num_features,
                            std::uint64_t seed, FrequencySampler sampler) {
  return RffBasis(spec, num_features, seed, sampler);
}

}  // namespace drfgp
