#ifndef DRFGP_KERNEL_HPP
#define DRFGP_KERNEL_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace drfgp {

/// Stationary kernel hyperparameters. SE-ARD is the only family for now;
/// the tag keeps the sampling interface open for other spectral densities.
struct KernelSpec {
  enum class Family { SquaredExponentialArd };

  Eigen::VectorXd lengthscales;  // one per input dimension, all > 0
  Family family = Family::SquaredExponentialArd;

  int dim() const { return static_cast<int>(lengthscales.size()); }
  void validate() const;  // throws InvalidSpecError

  static KernelSpec se_ard(Eigen::VectorXd lengthscales);
  static KernelSpec se_iso(double lengthscale, int dim);
};

/// k(x, x') = exp(-sum_d (x_d - x'_d)^2 / lambda_d^2)
double exact_kernel(const KernelSpec& spec,
                    const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y);

/// How spectral frequencies are drawn. Only plain i.i.d. sampling is
/// implemented; the enum is the hook for orthogonal / quasi-random variants.
enum class FrequencySampler { IidGaussian };

/// A sampled frequency matrix defining the 2J-dimensional feature map
///   phi(x) = (1/sqrt(J)) [sin(x.w_1), cos(x.w_1), ..., sin(x.w_J), cos(x.w_J)].
/// Immutable after construction. Agents share a map by sharing (spec, J, seed).
class RffBasis {
 public:
  RffBasis(KernelSpec spec, int num_features, std::uint64_t seed,
           FrequencySampler sampler = FrequencySampler::IidGaussian);

  const Eigen::MatrixXd& frequencies() const { return frequencies_; }  // J x D
  const KernelSpec& spec() const { return spec_; }
  int num_features() const { return num_features_; }  // J
  int feature_dim() const { return 2 * num_features_; }
  int input_dim() const { return spec_.dim(); }
  std::uint64_t seed() const { return seed_; }

  Eigen::VectorXd feature_map(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  void feature_map_into(const Eigen::Ref<const Eigen::VectorXd>& x,
                        Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  KernelSpec spec_;
  int num_features_;
  std::uint64_t seed_;
  Eigen::MatrixXd frequencies_;
};

/// Draw J spectral frequencies for the kernel: row j has independent
/// coordinates w_d ~ N(0, 2 / lambda_d^2). Pure function of (spec, J, seed).
RffBasis sample_frequencies(const KernelSpec& spec, int num_features,
                            std::uint64_t seed,
                            FrequencySampler sampler = FrequencySampler::IidGaussian);

}  // namespace drfgp

#endif  // DRFGP_KERNEL_HPP
