#ifndef DRFGP_METRICS_HPP
#define DRFGP_METRICS_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace drfgp {

enum class Phase { Train, Holdout };

/// One logged prediction. Train records are prequential: the prediction and
/// weights are the ones in force before the observation was used.
struct MetricsRecord {
  Phase phase = Phase::Train;
  int step = 0;  // 1-based; holdout rows count from 1 again
  int agent = 0;
  double target = 0.0;
  double mixture_mean = 0.0;
  double mixture_variance = 0.0;
  std::vector<double> model_means;
  std::vector<double> model_variances;
  std::vector<double> weights;
};

struct MetricsLog {
  int num_agents = 0;
  int num_models = 0;
  std::vector<MetricsRecord> records;
  // Final normalized weights per agent (N x M). Filled by run_experiment;
  // empty after reading a log from disk.
  Eigen::MatrixXd final_weights;
};

/// Delimited text, one record per line, doubles at full precision so rewrites
/// are byte-identical.
void write_metrics(const MetricsLog& log, const std::string& path);
MetricsLog read_metrics(const std::string& path);

/// Running prequential error sampled every `sample_every` steps:
///   MSE(t) = (1 / (N floor(t/k))) sum_{tau=1..floor(t/k)} sum_n
///            (prediction(n, k tau) - target(n, k tau))^2,  k = sample_every.
/// Returns (t, mse) for t = k, 2k, ... up to the last training step.
std::vector<std::pair<int, double>> running_mse(const MetricsLog& log,
                                                int sample_every);

/// Mean squared error of the frozen-posterior mixture predictions over all
/// holdout records (all agents pooled).
double holdout_mse(const MetricsLog& log);

void write_summary(const MetricsLog& log, const std::string& path);

}  // namespace drfgp

#endif  // DRFGP_METRICS_HPP
