/* drfgp: decentralized online Gaussian-process regression with random
 * Fourier features, consensus fusion, and online Bayesian model averaging.
 *
 * C interface to the shared library. All functions return a drfgp_status;
 * on failure, drfgp_last_error() describes what went wrong (thread-local).
 * Objects are opaque handles created and destroyed through these calls.
 */

#ifndef DRFGP_H
#define DRFGP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drfgp_status {
  DRFGP_OK = 0,
  DRFGP_ERROR_INVALID_ARGUMENT = 1, /* null pointer, bad handle, bad value */
  DRFGP_ERROR_INVALID_SPEC = 2,     /* bad hyperparameters or config values */
  DRFGP_ERROR_SHAPE = 3,            /* dimension or length mismatch */
  DRFGP_ERROR_NUMERICAL = 4,        /* lost positive definiteness, degeneracy */
  DRFGP_ERROR_GRAPH = 5,            /* disconnected graph, generation failure */
  DRFGP_ERROR_PARSE = 6,            /* unparseable file content */
  DRFGP_ERROR_SCHEMA = 7,           /* missing column, unknown key */
  DRFGP_ERROR_IO = 8,               /* file open or write failure */
  DRFGP_ERROR_UNKNOWN = 9
} drfgp_status;

const char* drfgp_version(void);

/* Message from the most recent failing call on this thread ("" if none). */
const char* drfgp_last_error(void);

/* ------------------------------------------------------------------ */
/* Random Fourier feature basis                                        */
/* ------------------------------------------------------------------ */

typedef struct drfgp_basis drfgp_basis;

/* Sample num_features spectral frequencies for an SE-ARD kernel with the
 * given per-dimension lengthscales. Deterministic per seed. */
drfgp_status drfgp_basis_create(const double* lengthscales, size_t dim,
                                size_t num_features, uint64_t seed,
                                drfgp_basis** out);
void drfgp_basis_free(drfgp_basis* basis);

size_t drfgp_basis_num_features(const drfgp_basis* basis);
size_t drfgp_basis_input_dim(const drfgp_basis* basis);

/* Writes the 2*num_features feature values of x into out_features. */
drfgp_status drfgp_basis_features(const drfgp_basis* basis, const double* x,
                                  size_t dim, double* out_features);

/* Exact SE-ARD kernel value for the same parameterization. */
drfgp_status drfgp_exact_kernel(const double* lengthscales, size_t dim,
                                const double* x, const double* y, double* out);

/* ------------------------------------------------------------------ */
/* Experiment configuration                                            */
/* ------------------------------------------------------------------ */

typedef struct drfgp_config drfgp_config;

drfgp_status drfgp_config_create(drfgp_config** out); /* defaults */
drfgp_status drfgp_config_load(const char* path, drfgp_config** out);
void drfgp_config_free(drfgp_config* config);

/* Set / read one key with the same names and syntax as the config file. */
drfgp_status drfgp_config_set(drfgp_config* config, const char* key,
                              const char* value);
drfgp_status drfgp_config_get(const drfgp_config* config, const char* key,
                              char* buf, size_t buflen);
drfgp_status drfgp_config_write(const drfgp_config* config, const char* path);

/* ------------------------------------------------------------------ */
/* Experiment runs and metrics                                         */
/* ------------------------------------------------------------------ */

typedef struct drfgp_metrics drfgp_metrics;

/* Run the experiment described by the config: loads the config's dataset,
 * standardizes if requested, streams it through the agent network, then
 * evaluates the frozen posteriors on the holdout suffix. */
drfgp_status drfgp_run(const drfgp_config* config, drfgp_metrics** out);

drfgp_status drfgp_metrics_read(const char* path, drfgp_metrics** out);
drfgp_status drfgp_metrics_write(const drfgp_metrics* metrics, const char* path);
drfgp_status drfgp_metrics_write_summary(const drfgp_metrics* metrics,
                                         const char* path);
void drfgp_metrics_free(drfgp_metrics* metrics);

size_t drfgp_metrics_num_records(const drfgp_metrics* metrics);
size_t drfgp_metrics_num_agents(const drfgp_metrics* metrics);
size_t drfgp_metrics_num_models(const drfgp_metrics* metrics);

/* Running prequential MSE sampled every sample_every steps. Always stores
 * the full series length in *out_len; copies up to capacity points into
 * out_steps / out_mse when they are non-null. */
drfgp_status drfgp_metrics_running_mse(const drfgp_metrics* metrics,
                                       int sample_every, double* out_steps,
                                       double* out_mse, size_t capacity,
                                       size_t* out_len);

/* Mean squared error over the holdout records. */
drfgp_status drfgp_metrics_holdout_mse(const drfgp_metrics* metrics,
                                       double* out);

/* ------------------------------------------------------------------ */
/* Snapshots                                                           */
/* ------------------------------------------------------------------ */

/* Writes a human-readable digest of a snapshot file into buf (truncating
 * if needed; always NUL-terminated). *out_len gets the full length. */
drfgp_status drfgp_snapshot_summary(const char* path, char* buf, size_t buflen,
                                    size_t* out_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DRFGP_H */
