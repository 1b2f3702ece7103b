// Command-line front end. Talks to the library exclusively through the
// C interface in drfgp.h.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drfgp.h"

namespace {

const char* status_category(drfgp_status status) {
  switch (status) {
    case DRFGP_OK: return "ok";
    case DRFGP_ERROR_INVALID_ARGUMENT: return "invalid-argument";
    case DRFGP_ERROR_INVALID_SPEC: return "invalid-spec";
    case DRFGP_ERROR_SHAPE: return "shape";
    case DRFGP_ERROR_NUMERICAL: return "numerical";
    case DRFGP_ERROR_GRAPH: return "graph";
    case DRFGP_ERROR_PARSE: return "parse";
    case DRFGP_ERROR_SCHEMA: return "schema";
    case DRFGP_ERROR_IO: return "io";
    case DRFGP_ERROR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

// Prints the categorized error and returns the status as exit code.
int bail(drfgp_status status) {
  std::fprintf(stderr, "error (%s): %s\n", status_category(status),
               drfgp_last_error());
  return static_cast<int>(status);
}

#define CHECK(call)                        \
  do {                                     \
    const drfgp_status status_ = (call);   \
    if (status_ != DRFGP_OK) return bail(status_); \
  } while (0)

struct ConfigHandle {
  drfgp_config* ptr = nullptr;
  ~ConfigHandle() { drfgp_config_free(ptr); }
};
struct MetricsHandle {
  drfgp_metrics* ptr = nullptr;
  ~MetricsHandle() { drfgp_metrics_free(ptr); }
};

int cmd_run(const std::string& config_path, const std::string& dataset,
            const std::string& seed, const std::string& out_prefix,
            const std::vector<std::string>& overrides) {
  ConfigHandle config;
  if (config_path.empty()) {
    CHECK(drfgp_config_create(&config.ptr));
  } else {
    CHECK(drfgp_config_load(config_path.c_str(), &config.ptr));
  }
  if (!dataset.empty()) CHECK(drfgp_config_set(config.ptr, "dataset", dataset.c_str()));
  if (!seed.empty()) CHECK(drfgp_config_set(config.ptr, "seed", seed.c_str()));
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error (invalid-argument): --set expects key=value, got '%s'\n",
                   kv.c_str());
      return static_cast<int>(DRFGP_ERROR_INVALID_ARGUMENT);
    }
    CHECK(drfgp_config_set(config.ptr, kv.substr(0, eq).c_str(),
                           kv.substr(eq + 1).c_str()));
  }

  MetricsHandle metrics;
  CHECK(drfgp_run(config.ptr, &metrics.ptr));

  const std::string metrics_path = out_prefix + ".metrics.csv";
  const std::string summary_path = out_prefix + ".summary.txt";
  CHECK(drfgp_metrics_write(metrics.ptr, metrics_path.c_str()));
  CHECK(drfgp_metrics_write_summary(metrics.ptr, summary_path.c_str()));

  std::printf("run complete: %zu records (%zu agents, %zu models)\n",
              drfgp_metrics_num_records(metrics.ptr),
              drfgp_metrics_num_agents(metrics.ptr),
              drfgp_metrics_num_models(metrics.ptr));
  double mse = 0.0;
  if (drfgp_metrics_holdout_mse(metrics.ptr, &mse) == DRFGP_OK) {
    std::printf("holdout mse: %.10g\n", mse);
  }
  std::printf("metrics: %s\nsummary: %s\n", metrics_path.c_str(),
              summary_path.c_str());
  return 0;
}

int cmd_metrics(const std::string& log_path, int sample_every,
                const std::string& out_path) {
  MetricsHandle metrics;
  CHECK(drfgp_metrics_read(log_path.c_str(), &metrics.ptr));

  size_t len = 0;
  CHECK(drfgp_metrics_running_mse(metrics.ptr, sample_every, nullptr, nullptr,
                                  0, &len));
  std::vector<double> steps(len), mse(len);
  CHECK(drfgp_metrics_running_mse(metrics.ptr, sample_every, steps.data(),
                                  mse.data(), len, &len));

  std::FILE* out = stdout;
  if (!out_path.empty()) {
    out = std::fopen(out_path.c_str(), "w");
    if (!out) {
      std::fprintf(stderr, "error (io): cannot write '%s'\n", out_path.c_str());
      return static_cast<int>(DRFGP_ERROR_IO);
    }
  }
  std::fprintf(out, "step,running_mse\n");
  for (size_t i = 0; i < len; ++i) {
    std::fprintf(out, "%d,%.17g\n", static_cast<int>(steps[i]), mse[i]);
  }
  if (out != stdout) std::fclose(out);

  double holdout = 0.0;
  if (drfgp_metrics_holdout_mse(metrics.ptr, &holdout) == DRFGP_OK) {
    std::printf("holdout mse: %.10g\n", holdout);
  }
  return 0;
}

int cmd_inspect(const std::string& snapshot_path) {
  size_t len = 0;
  CHECK(drfgp_snapshot_summary(snapshot_path.c_str(), nullptr, 0, &len));
  std::vector<char> buf(len + 1);
  CHECK(drfgp_snapshot_summary(snapshot_path.c_str(), buf.data(), buf.size(),
                               &len));
  std::fputs(buf.data(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("drfgp ") + drfgp_version() +
               " - decentralized online GP regression experiments"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute an experiment");
  std::string config_path, dataset, seed, out_prefix = "run";
  std::vector<std::string> overrides;
  run->add_option("--config", config_path, "Experiment config file (key = value lines)");
  run->add_option("--dataset", dataset, "Dataset CSV path (overrides config)");
  run->add_option("--seed", seed, "Master seed (overrides config)");
  run->add_option("--out", out_prefix, "Output prefix for metrics/summary files")
      ->capture_default_str();
  run->add_option("--set", overrides, "Override any config key, e.g. --set num_agents=5");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Recompute metrics from a log");
  std::string log_path, metrics_out;
  int sample_every = 1;
  metrics->add_option("--log", log_path, "Metrics log written by 'run'")->required();
  metrics->add_option("--every", sample_every, "Sample the running MSE every k steps")
      ->capture_default_str();
  metrics->add_option("--out", metrics_out, "Write the series here instead of stdout");

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Summarize a snapshot file");
  std::string snapshot_path;
  inspect->add_option("--snapshot", snapshot_path, "Snapshot file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, dataset, seed, out_prefix, overrides);
  if (metrics->parsed()) return cmd_metrics(log_path, sample_every, metrics_out);
  if (inspect->parsed()) return cmd_inspect(snapshot_path);
  return 0;
}
