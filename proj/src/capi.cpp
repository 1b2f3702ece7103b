#include "drfgp.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "drfgp/config.hpp"
#include "drfgp/errors.hpp"
#include "drfgp/kernel.hpp"
#include "drfgp/metrics.hpp"
#include "drfgp/runner.hpp"
#include "drfgp/snapshot.hpp"

// =============================================================================
// C-ABI layer: opaque handles over the C++ core, exceptions mapped to status
// codes with a thread-local message.
// =============================================================================

struct drfgp_basis {
  drfgp::RffBasis impl;
};
struct drfgp_config {
  drfgp::ExperimentConfig impl;
};
struct drfgp_metrics {
  drfgp::MetricsLog impl;
};

namespace {

thread_local std::string g_last_error;

drfgp_status to_status(drfgp::ErrorCode code) {
  using drfgp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidSpec: return DRFGP_ERROR_INVALID_SPEC;
    case ErrorCode::Shape: return DRFGP_ERROR_SHAPE;
    case ErrorCode::Numerical: return DRFGP_ERROR_NUMERICAL;
    case ErrorCode::Graph: return DRFGP_ERROR_GRAPH;
    case ErrorCode::Parse: return DRFGP_ERROR_PARSE;
    case ErrorCode::Schema: return DRFGP_ERROR_SCHEMA;
    case ErrorCode::Io: return DRFGP_ERROR_IO;
  }
  return DRFGP_ERROR_UNKNOWN;
}

drfgp_status fail(drfgp_status status, const char* msg) {
  g_last_error = msg;
  return status;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
drfgp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DRFGP_OK;
  } catch (const drfgp::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DRFGP_ERROR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DRFGP_ERROR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return DRFGP_ERROR_UNKNOWN;
  }
}

void copy_out(const std::string& text, char* buf, size_t buflen,
              size_t* out_len) {
  if (out_len) *out_len = text.size();
  if (buf && buflen > 0) {
    const size_t n = std::min(buflen - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
}

}  // namespace

extern "C" {

const char* drfgp_version(void) { return "0.1.0"; }

const char* drfgp_last_error(void) { return g_last_error.c_str(); }

// ---------------------------------------------------------------------------
// Basis
// ---------------------------------------------------------------------------

drfgp_status drfgp_basis_create(const double* lengthscales, size_t dim,
                                size_t num_features, uint64_t seed,
                                drfgp_basis** out) {
  if (!lengthscales || !out || dim == 0) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_basis_create");
  }
  *out = nullptr;
  return guarded([&] {
    Eigen::VectorXd ls(static_cast<Eigen::Index>(dim));
    for (size_t d = 0; d < dim; ++d) ls[static_cast<Eigen::Index>(d)] = lengthscales[d];
    *out = new drfgp_basis{
        drfgp::RffBasis(drfgp::KernelSpec::se_ard(std::move(ls)),
                        static_cast<int>(num_features), seed)};
  });
}

void drfgp_basis_free(drfgp_basis* basis) { delete basis; }

size_t drfgp_basis_num_features(const drfgp_basis* basis) {
  return basis ? static_cast<size_t>(basis->impl.num_features()) : 0;
}

size_t drfgp_basis_input_dim(const drfgp_basis* basis) {
  return basis ? static_cast<size_t>(basis->impl.input_dim()) : 0;
}

drfgp_status drfgp_basis_features(const drfgp_basis* basis, const double* x,
                                  size_t dim, double* out_features) {
  if (!basis || !x || !out_features) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_basis_features");
  }
  return guarded([&] {
    Eigen::Map<const Eigen::VectorXd> input(x, static_cast<Eigen::Index>(dim));
    Eigen::Map<Eigen::VectorXd> output(out_features, basis->impl.feature_dim());
    basis->impl.feature_map_into(input, output);
  });
}

drfgp_status drfgp_exact_kernel(const double* lengthscales, size_t dim,
                                const double* x, const double* y, double* out) {
  if (!lengthscales || !x || !y || !out || dim == 0) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_exact_kernel");
  }
  return guarded([&] {
    Eigen::VectorXd ls(static_cast<Eigen::Index>(dim));
    for (size_t d = 0; d < dim; ++d) ls[static_cast<Eigen::Index>(d)] = lengthscales[d];
    Eigen::Map<const Eigen::VectorXd> xv(x, static_cast<Eigen::Index>(dim));
    Eigen::Map<const Eigen::VectorXd> yv(y, static_cast<Eigen::Index>(dim));
    *out = drfgp::exact_kernel(drfgp::KernelSpec::se_ard(std::move(ls)), xv, yv);
  });
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

drfgp_status drfgp_config_create(drfgp_config** out) {
  if (!out) return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_config_create");
  *out = nullptr;
  return guarded([&] { *out = new drfgp_config{}; });
}

drfgp_status drfgp_config_load(const char* path, drfgp_config** out) {
  if (!path || !out) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_config_load");
  }
  *out = nullptr;
  return guarded([&] { *out = new drfgp_config{drfgp::load_config_file(path)}; });
}

void drfgp_config_free(drfgp_config* config) { delete config; }

drfgp_status drfgp_config_set(drfgp_config* config, const char* key,
                              const char* value) {
  if (!config || !key || !value) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_config_set");
  }
  return guarded([&] { config->impl.set(key, value); });
}

drfgp_status drfgp_config_get(const drfgp_config* config, const char* key,
                              char* buf, size_t buflen) {
  if (!config || !key || !buf || buflen == 0) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_config_get");
  }
  return guarded([&] {
    const std::string text = config->impl.to_text();
    const std::string needle = std::string(key) + " = ";
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t end = text.find('\n', pos);
      const std::string line = text.substr(pos, end - pos);
      if (line.rfind(needle, 0) == 0) {
        copy_out(line.substr(needle.size()), buf, buflen, nullptr);
        return;
      }
      pos = (end == std::string::npos) ? text.size() : end + 1;
    }
    throw drfgp::SchemaError("unknown config key '" + std::string(key) + "'");
  });
}

drfgp_status drfgp_config_write(const drfgp_config* config, const char* path) {
  if (!config || !path) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_config_write");
  }
  return guarded([&] { drfgp::write_config_file(config->impl, path); });
}

// ---------------------------------------------------------------------------
// Runs and metrics
// ---------------------------------------------------------------------------

drfgp_status drfgp_run(const drfgp_config* config, drfgp_metrics** out) {
  if (!config || !out) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_run");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new drfgp_metrics{drfgp::run_experiment_from_config(config->impl)};
  });
}

drfgp_status drfgp_metrics_read(const char* path, drfgp_metrics** out) {
  if (!path || !out) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_metrics_read");
  }
  *out = nullptr;
  return guarded([&] { *out = new drfgp_metrics{drfgp::read_metrics(path)}; });
}

drfgp_status drfgp_metrics_write(const drfgp_metrics* metrics, const char* path) {
  if (!metrics || !path) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_metrics_write");
  }
  return guarded([&] { drfgp::write_metrics(metrics->impl, path); });
}

drfgp_status drfgp_metrics_write_summary(const drfgp_metrics* metrics,
                                         const char* path) {
  if (!metrics || !path) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_metrics_write_summary");
  }
  return guarded([&] { drfgp::write_summary(metrics->impl, path); });
}

void drfgp_metrics_free(drfgp_metrics* metrics) { delete metrics; }

size_t drfgp_metrics_num_records(const drfgp_metrics* metrics) {
  return metrics ? metrics->impl.records.size() : 0;
}

size_t drfgp_metrics_num_agents(const drfgp_metrics* metrics) {
  return metrics ? static_cast<size_t>(metrics->impl.num_agents) : 0;
}

size_t drfgp_metrics_num_models(const drfgp_metrics* metrics) {
  return metrics ? static_cast<size_t>(metrics->impl.num_models) : 0;
}

drfgp_status drfgp_metrics_running_mse(const drfgp_metrics* metrics,
                                       int sample_every, double* out_steps,
                                       double* out_mse, size_t capacity,
                                       size_t* out_len) {
  if (!metrics || !out_len) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_metrics_running_mse");
  }
  return guarded([&] {
    const auto series = drfgp::running_mse(metrics->impl, sample_every);
    *out_len = series.size();
    const size_t n = std::min(capacity, series.size());
    for (size_t i = 0; i < n; ++i) {
      if (out_steps) out_steps[i] = static_cast<double>(series[i].first);
      if (out_mse) out_mse[i] = series[i].second;
    }
  });
}

drfgp_status drfgp_metrics_holdout_mse(const drfgp_metrics* metrics,
                                       double* out) {
  if (!metrics || !out) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_metrics_holdout_mse");
  }
  return guarded([&] { *out = drfgp::holdout_mse(metrics->impl); });
}

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

drfgp_status drfgp_snapshot_summary(const char* path, char* buf, size_t buflen,
                                    size_t* out_len) {
  if (!path) {
    return fail(DRFGP_ERROR_INVALID_ARGUMENT, "null argument to drfgp_snapshot_summary");
  }
  return guarded([&] {
    const std::string text = drfgp::snapshot_summary(drfgp::read_snapshot(path));
    copy_out(text, buf, buflen, out_len);
  });
}

}  // extern "C"
