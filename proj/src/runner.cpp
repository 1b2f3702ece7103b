#include "drfgp/runner.hpp"

#include <chrono>
#include <cstdio>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "drfgp/agent.hpp"
#include "drfgp/errors.hpp"
#include "drfgp/graph.hpp"
#include "drfgp/rng.hpp"
#include "drfgp/snapshot.hpp"

namespace drfgp {

std::vector<std::vector<int>> partition_stream(int num_rows, int num_agents) {
  if (num_agents < 1) {
    throw InvalidSpecError("partition_stream: num_agents must be >= 1");
  }
  if (num_rows < 0) {
    throw InvalidSpecError("partition_stream: negative row count");
  }
  std::vector<std::vector<int>> streams(num_agents);
  for (int i = 0; i < num_rows; ++i) {
    streams[i % num_agents].push_back(i);
  }
  return streams;
}

namespace {

KernelSpec materialize_spec(const std::vector<double>& lengthscales,
                            Eigen::Index dim) {
  if (lengthscales.size() == 1) {
    return KernelSpec::se_iso(lengthscales[0], static_cast<int>(dim));
  }
  if (static_cast<Eigen::Index>(lengthscales.size()) != dim) {
    throw InvalidSpecError("model has " + std::to_string(lengthscales.size()) +
                           " lengthscales but data has dimension " +
                           std::to_string(dim));
  }
  Eigen::VectorXd ls(dim);
  for (Eigen::Index d = 0; d < dim; ++d) ls[d] = lengthscales[d];
  return KernelSpec::se_ard(std::move(ls));
}

std::string snapshot_file(const std::string& prefix, int step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-step%06d.snap", step);
  return prefix + buf;
}

}  // namespace

MetricsLog run_experiment(const ExperimentConfig& config, const Dataset& dataset,
                          const StepObserver& observer) {
  config.validate();
  const int N = config.num_agents;
  const int M = static_cast<int>(config.models.size());
  const int J = config.num_features;
  const Eigen::Index total_rows = dataset.rows();
  if (total_rows < 1) {
    throw InvalidSpecError("run_experiment: dataset is empty");
  }
  if (config.holdout_size >= total_rows) {
    throw InvalidSpecError("holdout_size " + std::to_string(config.holdout_size) +
                           " must be smaller than the dataset (" +
                           std::to_string(total_rows) + " rows)");
  }
  if (config.snapshot_every > 0 && config.snapshot_path.empty()) {
    throw InvalidSpecError("snapshot_every is set but snapshot_path is empty");
  }
  const int train_rows = static_cast<int>(total_rows) - config.holdout_size;

  // Every consumer of randomness gets a named sub-seed of the master seed.
  const CommGraph graph =
      random_graph(N, config.edge_probability, derive_seed(config.seed, "graph"));
  const WeightMatrix weights = build_weights(graph, config.weight_scheme);

  std::vector<std::shared_ptr<const RffBasis>> bases;
  bases.reserve(M);
  for (int m = 0; m < M; ++m) {
    bases.push_back(std::make_shared<const RffBasis>(
        materialize_spec(config.models[m], dataset.dim()), J,
        derive_seed(config.seed, "frequencies", m)));
  }

  std::vector<Agent> agents;
  agents.reserve(N);
  for (int n = 0; n < N; ++n) {
    agents.emplace_back(n, N, bases, config.prior_var, config.obs_var);
  }

  std::vector<int> order(train_rows);
  std::iota(order.begin(), order.end(), 0);
  if (config.shuffle) {
    std::mt19937_64 gen(derive_seed(config.seed, "shuffle"));
    for (int i = train_rows - 1; i > 0; --i) {
      const int j = static_cast<int>(gen() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[i], order[j]);
    }
  }

  const int payload = Agent::payload_size(M, J);
  const int num_steps = (train_rows + N - 1) / N;

  MetricsLog log;
  log.num_agents = N;
  log.num_models = M;
  log.records.reserve(static_cast<std::size_t>(train_rows) +
                      static_cast<std::size_t>(config.holdout_size) * N);

  Eigen::MatrixXd payloads(N, payload);
  Eigen::MatrixXd local_liks(N, M);

  for (int t = 0; t < num_steps; ++t) {
    const auto step_start = std::chrono::steady_clock::now();
    payloads.setZero();
    local_liks.setZero();

    for (int n = 0; n < N; ++n) {
      const int row_index = t * N + n;
      if (row_index >= train_rows) continue;
      const int row = order[row_index];
      const Eigen::VectorXd x = dataset.inputs.row(row).transpose();
      const double y = dataset.targets[row];

      const LocalPhaseResult local = agents[n].local_phase(x, y);
      const StepResult& step = local.per_point.front();

      MetricsRecord record;
      record.phase = Phase::Train;
      record.step = t + 1;
      record.agent = n;
      record.target = y;
      record.mixture_mean = step.mixture_mean;
      record.mixture_variance = step.mixture_variance;
      const Eigen::VectorXd w = agents[n].weights();
      for (int m = 0; m < M; ++m) {
        record.model_means.push_back(step.model_predictions[m].mean);
        record.model_variances.push_back(step.model_predictions[m].variance);
        record.weights.push_back(w[m]);
      }
      log.records.push_back(std::move(record));

      payloads.row(n) = agents[n].pack_payload(local.stats, step.log_liks);
      local_liks.row(n) = step.log_liks.transpose();
    }

    payloads = run_consensus(std::move(payloads), weights, config.consensus_rounds);

    for (int n = 0; n < N; ++n) {
      const Eigen::VectorXd fused = payloads.row(n).transpose();
      try {
        agents[n].fuse_phase(fused);
      } catch (const Error& e) {
        throw NumericalError("step " + std::to_string(t + 1) + ": " + e.what());
      }
      if (config.bma_mode == BmaMode::Local) {
        agents[n].apply_bma(local_liks.row(n).transpose());
      } else {
        agents[n].apply_bma(static_cast<double>(N) *
                            Agent::payload_log_liks(fused, M, J));
      }
    }

    if (observer) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - step_start;
      observer(t + 1, payload, elapsed.count());
    }
    if (config.snapshot_every > 0 &&
        ((t + 1) % config.snapshot_every == 0 || t + 1 == num_steps)) {
      write_snapshot(snapshot_file(config.snapshot_path, t + 1), config.hash(),
                     t + 1, agents);
    }
  }

  // Holdout pass on frozen posteriors: every agent predicts every row.
  for (int h = 0; h < config.holdout_size; ++h) {
    const int row = train_rows + h;
    const Eigen::VectorXd x = dataset.inputs.row(row).transpose();
    const double y = dataset.targets[row];
    for (int n = 0; n < N; ++n) {
      const StepResult step = agents[n].predict(x);
      MetricsRecord record;
      record.phase = Phase::Holdout;
      record.step = h + 1;
      record.agent = n;
      record.target = y;
      record.mixture_mean = step.mixture_mean;
      record.mixture_variance = step.mixture_variance;
      const Eigen::VectorXd w = agents[n].weights();
      for (int m = 0; m < M; ++m) {
        record.model_means.push_back(step.model_predictions[m].mean);
        record.model_variances.push_back(step.model_predictions[m].variance);
        record.weights.push_back(w[m]);
      }
      log.records.push_back(std::move(record));
    }
  }

  log.final_weights.resize(N, M);
  for (int n = 0; n < N; ++n) {
    log.final_weights.row(n) = agents[n].weights().transpose();
  }
  return log;
}

MetricsLog run_experiment_from_config(const ExperimentConfig& config) {
  if (config.dataset.empty()) {
    throw InvalidSpecError("config has no dataset path");
  }
  DatasetSchema schema;
  schema.target_column = config.target_column;
  schema.delimiter = config.delimiter;
  schema.has_header = config.has_header;
  Dataset dataset = load_dataset(config.dataset, schema);
  if (config.holdout_size >= dataset.rows()) {
    throw InvalidSpecError("holdout_size " + std::to_string(config.holdout_size) +
                           " must be smaller than the dataset (" +
                           std::to_string(dataset.rows()) + " rows)");
  }
  if (config.standardize) {
    standardize_inputs(dataset, dataset.rows() - config.holdout_size);
  }
  return run_experiment(config, dataset);
}

}  // namespace drfgp
