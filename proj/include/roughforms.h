/*
 * roughforms.h
 *
 * C interface to the roughforms library: sewn integrals of rough
 * differential forms over simplices.
 *
 * Copyright 2026 The roughforms authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ROUGHFORMS_H
#define ROUGHFORMS_H

#ifdef __cplusplus
extern "C" {
#endif

#define RF_ABI_VERSION 1

/* Status codes. Every library exception maps to one of these; the message
 * for the most recent failure on the calling thread is kept by
 * rf_last_error(). */
typedef enum rf_status {
  RF_OK = 0,
  RF_ERROR_SYNTAX = 1,
  RF_ERROR_UNKNOWN_IDENTIFIER = 2,
  RF_ERROR_ARITY = 3,
  RF_ERROR_DOMAIN = 4,
  RF_ERROR_DIMENSION = 5,
  RF_ERROR_DEGREE = 6,
  RF_ERROR_PERMUTATION = 7,
  RF_ERROR_PARAMETER = 8,
  RF_ERROR_BUDGET = 9,
  RF_ERROR_DIVERGENT_GAUGE = 10,
  RF_ERROR_INSUFFICIENT_DATA = 11,
  RF_ERROR_ORACLE = 12,
  RF_ERROR_NONCONVERGENT = 13,
  RF_ERROR_INTERNAL = 14
} rf_status;

/* ABI version of the loaded library. */
int rf_abi_version(void);

/* Name of a status code, e.g. "RF_ERROR_DOMAIN". */
const char* rf_status_name(rf_status status);

/* Message of the last failing call on this thread; empty string if none. */
const char* rf_last_error(void);

/* Stable process exit code for a status: 0 success, 2 usage or validation,
 * 3 non-convergence, 4 budget or internal failure. */
int rf_suggested_exit_code(rf_status status);

/* Sewing controls shared by all drivers. Initialize with
 * rf_sew_options_init, then override fields as needed. */
typedef struct rf_sew_options {
  int max_level;           /* -1: per-degree default (14 segments, 10 triangles) */
  double abs_tol;          /* absolute increment tolerance, default 1e-10 */
  double rel_tol;          /* relative tolerance on the partial sum, 1e-8 */
  int variant;             /* 0: plain subdivision, 1: adjoint variant */
  int extrapolate;         /* 1: Richardson-accelerate the partial sums */
  double divergence_ratio; /* increment growth flagged at this ratio, 0.95 */
  int divergence_window;   /* consecutive growing levels before diverged, 4 */
  int threads;             /* parallel reduction width, default 1 */
  int kahan;               /* 1: compensated per-level summation */
  int symmetrize;          /* 1: trapezoid representative for Young germs */
} rf_sew_options;

void rf_sew_options_init(rf_sew_options* opts);

/* Reports are opaque; free with rf_report_free. All drivers write NULL to
 * *out on failure. Scalars are arithmetic expressions in x1..x8 (aliases
 * x, y, z), see the library documentation for the grammar. Simplices are
 * "x1,y1;x2,y2;..." with one vertex per semicolon group: 2 vertices make a
 * segment, 3 a triangle. */
typedef struct rf_report rf_report;

/* Young integral of f dg over a segment. `germ_hook` may name a test germ
 * that replaces f cup delta g: "abs-increment" is |g(q) - g(p)|; pass NULL
 * or "" for the standard germ. */
rf_status rf_young(const char* f, const char* g, const char* simplex,
                   const char* germ_hook, const rf_sew_options* opts,
                   rf_report** out);

/* Zust integral of f dg1 ^ dg2 over a triangle. */
rf_status rf_zust(const char* f, const char* g1, const char* g2,
                  const char* simplex, const rf_sew_options* opts,
                  rf_report** out);

/* Both sides of the Stokes identity for f dg on a triangle. */
rf_status rf_stokes(const char* f, const char* g, const char* simplex,
                    const rf_sew_options* opts, rf_report** out);

/* Pull-back comparison for a curve (semicolon-separated component
 * expressions of phi) or a surface map. */
rf_status rf_pullback_curve(const char* f, const char* g, const char* phi,
                            const char* simplex, const rf_sew_options* opts,
                            rf_report** out);
rf_status rf_pullback_surface(const char* f, const char* g1, const char* g2,
                              const char* phi, const char* simplex,
                              const rf_sew_options* opts, rf_report** out);

/* Oscillatory pure-area families: one row per entry of the comma-separated
 * n list, comparing the plain sewn value, the corrected value, and the
 * classical reference. xi is a comma-separated direction (1D only). */
rf_status rf_pure_area_1d(const char* n_list, const char* xi,
                          const char* simplex, const rf_sew_options* opts,
                          rf_report** out);
rf_status rf_pure_area_2d(const char* n_list, double eps, const char* simplex,
                          const rf_sew_options* opts, rf_report** out);

/* Seminorm of delta(f cup delta g) against the gauge
 * diam^gamma1 * vol2^gamma2, sampled around the reference simplex. `seed`
 * drives the random part of the sampler; a fixed seed gives reproducible
 * estimates. */
rf_status rf_gauge_seminorm(const char* f, const char* g, const char* simplex,
                            double gamma1, double gamma2,
                            unsigned long long seed, rf_report** out);

/* Certification suite for the Young germ of (f, g) (or a hook germ, as in
 * rf_young) on the given simplex: alternating, cut-additivity, collapse
 * annihilation, degeneracy checks against `tol`. The report's converged
 * flag is the overall pass. */
rf_status rf_certify(const char* f, const char* g, const char* simplex,
                     const char* germ_hook, const rf_sew_options* opts,
                     double tol, rf_report** out);

/* Report accessors. Strings returned by rf_report_json / rf_report_csv are
 * heap-allocated; release them with rf_string_free. */
double rf_report_value(const rf_report* report);
double rf_report_error(const rf_report* report);
int rf_report_converged(const rf_report* report);
const char* rf_report_status(const rf_report* report);

/* Full JSON envelope: {"schema":"roughforms/1","command":...,
 * "config":...,"result":...}. Identical inputs give identical bytes. */
char* rf_report_json(const rf_report* report);

/* Convergence table (or per-n table for the pure-area drivers) as CSV. */
char* rf_report_csv(const rf_report* report);

void rf_report_free(rf_report* report);
void rf_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ROUGHFORMS_H */
