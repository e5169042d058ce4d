// Copyright 2026 The purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PURIFY_PURIFY_H_
#define PURIFY_PURIFY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PURIFY_BUILDING_LIBRARY)
#define PURIFY_API __attribute__((visibility("default")))
#else
#define PURIFY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes of the command-line tool. */
typedef enum purify_status {
  PURIFY_OK = 0,
  PURIFY_ERR_VALIDATION = 2,
  PURIFY_FLAGGED = 3,
  PURIFY_ERR_RUNTIME = 4
} purify_status;

typedef struct purify_rng purify_rng;
typedef struct purify_tableau purify_tableau;

PURIFY_API const char* purify_version(void);

/* Message of the last failed call on this thread, "" if none. */
PURIFY_API const char* purify_last_error(void);

/* Receives one line of log output at a time, without the newline.
   NULL restores the default sink (stderr). */
typedef void (*purify_log_fn)(const char* line, void* user);
PURIFY_API void purify_set_log_callback(purify_log_fn fn, void* user);

/* Random source. */
PURIFY_API purify_status purify_rng_new(uint64_t seed, purify_rng** out);
PURIFY_API void purify_rng_free(purify_rng* rng);
PURIFY_API purify_status purify_rng_uniform(purify_rng* rng, double* out);

/* Mixed stabilizer states. A new tableau is maximally mixed. */
PURIFY_API purify_status purify_tableau_new(size_t num_qubits, purify_tableau** out);
PURIFY_API purify_status purify_tableau_from_text(const char* text, purify_tableau** out);
PURIFY_API purify_status purify_tableau_clone(const purify_tableau* t, purify_tableau** out);
PURIFY_API void purify_tableau_free(purify_tableau* t);

PURIFY_API purify_status purify_tableau_num_qubits(const purify_tableau* t, size_t* out);
PURIFY_API purify_status purify_tableau_rank(const purify_tableau* t, size_t* out);

/* Applies gate `index` of the two-qubit Clifford table to sites (a, b). */
PURIFY_API purify_status purify_tableau_apply_clifford(purify_tableau* t, size_t index, size_t a, size_t b);
PURIFY_API purify_status purify_tableau_apply_random_clifford(purify_tableau* t, purify_rng* rng, size_t a, size_t b,
                                                              size_t* index_out);

/* Z measurement; outcome is +1 or -1, purified is set to 1 when the rank grew. */
PURIFY_API purify_status purify_tableau_measure_z(purify_tableau* t, purify_rng* rng, size_t site, int* outcome,
                                                  int* purified);

/* One brickwork step at time `time` with uniform measurement probability p. */
PURIFY_API purify_status purify_tableau_step(purify_tableau* t, purify_rng* rng, size_t time, double p);

/* -log2 Tr rho^2 in bits. */
PURIFY_API purify_status purify_tableau_log_purity(const purify_tableau* t, size_t* out);

/* Logarithmic negativity in bits for the contiguous periodic window
   [first, first + length). */
PURIFY_API purify_status purify_tableau_negativity(const purify_tableau* t, size_t first, size_t length,
                                                   size_t* out);

PURIFY_API purify_status purify_tableau_check(const purify_tableau* t);

/* Writes at most `capacity` bytes including the terminator. `needed` receives
   the full size including the terminator. */
PURIFY_API purify_status purify_tableau_to_text(const purify_tableau* t, char* buffer, size_t capacity,
                                                size_t* needed);

PURIFY_API size_t purify_clifford_count(void);

/* File pipelines. Each returns PURIFY_FLAGGED when a fit finished but its
   result should not be trusted. */
typedef struct purify_simulate_options {
  const char* config_path;
  const char* out_dir;    /* NULL means "." */
  int has_seed;
  uint64_t seed;
  size_t workers;          /* 0 keeps the config value */
  const char* observable;  /* NULL keeps the config value */
  int has_profile_anchor;
  size_t profile_anchor;
} purify_simulate_options;

PURIFY_API purify_status purify_simulate(const purify_simulate_options* options);

PURIFY_API purify_status purify_collapse(const char* csv_path, const char* observable, const char* out_dir,
                                         double p_c, double nu, double zeta);
PURIFY_API purify_status purify_fit_powerlaw(const char* csv_path, const char* observable, const char* out_dir,
                                             double parameter);
PURIFY_API purify_status purify_fit_purity(const char* csv_path, const char* observable, const char* out_dir);

typedef struct purify_effham_options {
  size_t num_sites;
  const double* gammas;
  size_t num_gammas;
  double amplitude;
  double dtau;
  size_t steps;
  int print_coefficients;
  const char* out_dir; /* NULL means "." */
} purify_effham_options;

/* Fills `options` with defaults. */
PURIFY_API void purify_effham_defaults(purify_effham_options* options);
PURIFY_API purify_status purify_effham(const purify_effham_options* options);

/* Runs the [effham] section of a config file. */
PURIFY_API purify_status purify_effham_config(const char* config_path, const char* out_dir, int print_coefficients);

PURIFY_API purify_status purify_selftest(void);

#ifdef __cplusplus
}
#endif

#endif
