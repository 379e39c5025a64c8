/* Copyright 2026 The cohloss authors
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

/* C interface to the cohloss toolkit: analysis of vacuum-preserving quantum
 * channels (loss / coherence preservation / superposition creation), linear
 * optics synthesis, Jaynes-Cummings-type open dynamics, and generalized
 * spectra.
 *
 * Conventions:
 *  - Functions returning int give a status code (COHLOSS_OK on success);
 *    functions returning a pointer give NULL on failure. In both cases
 *    cohloss_last_error() / cohloss_last_error_code() describe the failure
 *    (thread-local).
 *  - Complex data crosses the boundary as interleaved doubles re,im,re,im,...
 *    in row-major order.
 *  - Strings returned through char** are heap-allocated; release them with
 *    cohloss_string_free.
 */

#ifndef COHLOSS_H
#define COHLOSS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define COHLOSS_OK 0
#define COHLOSS_ERR_ARGUMENT 2
#define COHLOSS_ERR_VALIDATION 3
#define COHLOSS_ERR_IO 4
#define COHLOSS_ERR_PHYSICS 5
#define COHLOSS_ERR_VACUUM_TEST 6

typedef struct cohloss_matrix cohloss_matrix;
typedef struct cohloss_channel cohloss_channel;

const char* cohloss_version(void);
const char* cohloss_last_error(void);
int cohloss_last_error_code(void);
void cohloss_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

cohloss_matrix* cohloss_matrix_create(int rows, int cols, const double* interleaved);
cohloss_matrix* cohloss_matrix_from_json(const char* json_text);
char* cohloss_matrix_to_json(const cohloss_matrix* m);
int cohloss_matrix_rows(const cohloss_matrix* m);
int cohloss_matrix_cols(const cohloss_matrix* m);
int cohloss_matrix_get(const cohloss_matrix* m, int row, int col, double* re, double* im);
void cohloss_matrix_free(cohloss_matrix* m);

int cohloss_tensor_product(const cohloss_matrix* a, const cohloss_matrix* b, cohloss_matrix** out);
int cohloss_partial_trace(const cohloss_matrix* m, const int* factor_dims, int n_factors,
                          const int* keep, int n_keep, cohloss_matrix** out);
int cohloss_operator_norm(const cohloss_matrix* m, double* out);
/* eigenvalues ascending (array of length rows); vectors as columns. Either
 * output may be NULL. */
int cohloss_hermitian_eigensystem(const cohloss_matrix* m, double* eigenvalues,
                                  cohloss_matrix** eigenvectors);
/* singular_values nonincreasing (array of length min(rows, cols)); any
 * output may be NULL. */
int cohloss_svd(const cohloss_matrix* m, cohloss_matrix** u, double* singular_values,
                cohloss_matrix** w);
/* 1 if a density operator to tolerance tol, else 0; diagnostics optional. */
int cohloss_validate_density_operator(const cohloss_matrix* m, double tol, int* ok,
                                      char** diagnostics);

/* ---- channels ---------------------------------------------------------- */

cohloss_channel* cohloss_channel_create(int dim, const cohloss_matrix* const* kraus, int n_kraus);
cohloss_channel* cohloss_channel_from_json(const char* json_text);
cohloss_channel* cohloss_channel_from_json_file(const char* path);
char* cohloss_channel_to_json(const cohloss_channel* ch);
int cohloss_channel_dim(const cohloss_channel* ch);
int cohloss_channel_kraus_count(const cohloss_channel* ch);
cohloss_matrix* cohloss_channel_kraus(const cohloss_channel* ch, int index);
void cohloss_channel_free(cohloss_channel* ch);

int cohloss_channel_apply(const cohloss_channel* ch, const cohloss_matrix* x, cohloss_matrix** out);
int cohloss_channel_choi(const cohloss_channel* ch, cohloss_matrix** out);
int cohloss_channel_is_vacuum_preserving(const cohloss_channel* ch, double tol, int* preserving,
                                         double* deviation);

/* Explicit loss channel from (sigma, gamma); sigma is 2x2. */
cohloss_channel* cohloss_channel_from_loss_params(const cohloss_matrix* sigma, double gamma_re,
                                                  double gamma_im);
/* Inverse for dim-2 channels: sigma = Phi(|1><1|), gamma = <0|Phi(|0><1|)|1>. */
int cohloss_channel_loss_params(const cohloss_channel* ch, cohloss_matrix** sigma,
                                double* gamma_re, double* gamma_im);

cohloss_channel* cohloss_channel_random_vacuum_preserving(int d, int anc, uint64_t seed);
cohloss_channel* cohloss_channel_convex_mixture(const cohloss_channel* const* channels,
                                                const double* weights, int count);
/* Eq.-style channel from a single-particle contraction (largest singular
 * value <= 1). */
cohloss_channel* cohloss_channel_from_contraction(const cohloss_matrix* s_op);

/* ---- coherence functionals and interferometry -------------------------- */

typedef struct cohloss_lpc_report {
  double loss;
  double preservation;
  double creation;
  double excess_coherence_loss; /* valid only when has_excess != 0 */
  int has_excess;
  double inequality_slack;
} cohloss_lpc_report;

/* psi: interleaved complex vector of length dim, normalized, orthogonal to
 * the vacuum component 0. vac_tol <= 0 selects the default (1e-9). */
int cohloss_lpc(const cohloss_channel* ch, const double* psi, int dim, double vac_tol,
                cohloss_lpc_report* out);
char* cohloss_lpc_report_to_json(const cohloss_lpc_report* report);
/* 1 if L P^2 + C^2 <= L(1-L) + 1e-9 and the zero-loss corollary holds. */
int cohloss_check_exclusion_inequality(const cohloss_lpc_report* report, int* holds);

/* Full two-path Mach-Zehnder simulation; u_internal is (dim-1)x(dim-1). */
int cohloss_mz_probability(const cohloss_channel* ch, const double* psi, int dim,
                           const cohloss_matrix* u_internal, double chi, double* p_out);
/* Fringe scan; scan_unitaries > 0 additionally optimizes the internal
 * unitary (seeded random candidates plus the analytic maximizer). Outputs:
 * fringe CSV with header chi,p_A and a summary JSON
 * {"visibility", "offset", "best_phase"}; either may be NULL. */
int cohloss_mz_scan(const cohloss_channel* ch, const double* psi, int dim, int chi_points,
                    int scan_unitaries, uint64_t seed, char** fringe_csv, char** summary_json);

/* Random-dilation verification of the exclusion inequality. Returns
 * COHLOSS_ERR_PHYSICS when a violation is found (an implementation bug by
 * construction). Summary JSON includes min_slack and
 * max_creation_at_zero_loss. */
int cohloss_verify_inequality(int count, int d, int anc, uint64_t seed, char** summary_json);

/* ---- linear optics ----------------------------------------------------- */

/* Mode matrix [[cos, sin], [-sin, cos]] (K = J = 1). */
cohloss_matrix* cohloss_beam_splitter_smatrix(double theta);

/* mode_unitary_json: {"K","J","S"}; ancilla_json NULL means the multimode
 * vacuum. On COHLOSS_ERR_VACUUM_TEST, offending_json (if non-NULL) receives
 * {"offending_modes": [...]} with 1-based rotated-mode indices. */
int cohloss_linopt_vacuum_test(const char* mode_unitary_json, const char* ancilla_json,
                               char** offending_json);
int cohloss_linopt_induced_channel(const char* mode_unitary_json, const char* ancilla_json,
                                   cohloss_channel** out);

/* ---- dynamics and spectra ---------------------------------------------- */

/* model_json: {"type":"jc"|"three_level", ...}. Returns the extracted field
 * channel parameters as {"sigma": matrix, "gamma": [re, im]}. */
int cohloss_extract_field_channel(const char* model_json, double t, double dt,
                                  char** loss_params_json);

/* sweep_config_json: {"model","axis","grid","snapshot_time","envelope"?,"dt"}.
 * Writes the spectrum CSV to csv_path (unless NULL) and returns a summary
 * JSON {"points","min_p","max_excess_loss","max_sigma01","wall_s"}. */
int cohloss_spectrum_run(const char* sweep_config_json, const char* csv_path, char** csv_out,
                         char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* COHLOSS_H */
