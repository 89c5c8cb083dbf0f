// Copyright 2026 The qwalk Authors
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

/* C interface to the qwalk library.
 *
 * Every entry point returns a qwalk_status. On failure a message is
 * available from qwalk_last_error() until the next call on the same
 * thread. Results are opaque handles owning a JSON document; release
 * them with qwalk_result_free. */

#ifndef QWALK_QWALK_H
#define QWALK_QWALK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    QWALK_OK = 0,
    /* Bad caller input: malformed config, out-of-range parameter. */
    QWALK_ERR_INVALID_ARGUMENT = 1,
    /* An internal consistency check failed. */
    QWALK_ERR_INVARIANT = 2,
    /* Anything else, including allocation failure. */
    QWALK_ERR_INTERNAL = 3,
} qwalk_status;

typedef enum {
    QWALK_MODEL_DQW = 0,
    QWALK_MODEL_SPLIT_STEP = 1,
    QWALK_MODEL_TWO_PERIOD = 2,
} qwalk_model;

typedef struct {
    double theta1;
    double theta2;
    int steps;
    /* Initial coin state alpha|0> + beta|1>. */
    double alpha_re, alpha_im;
    double beta_re, beta_im;
    qwalk_model model;
} qwalk_walk_config;

typedef struct qwalk_result qwalk_result;
typedef struct qwalk_noise qwalk_noise;

const char *qwalk_version(void);
const char *qwalk_last_error(void);

/* Fills `config` with a DQW from |0> with zero steps. */
void qwalk_walk_config_init(qwalk_walk_config *config);

/* Parses a noise config document:
 * {"readout": [[[m00, m01], [m10, m11]], ...], "crosstalk_eps": e,
 *  "shots": n, "seed": s}. */
qwalk_status qwalk_noise_parse(const char *json, qwalk_noise **out);
void qwalk_noise_free(qwalk_noise *noise);

/* Walk distribution. DQW and two-period walks are built as circuits,
 * compiled, simulated and checked against the direct evolution;
 * split-step walks use the direct evolution only. */
qwalk_status qwalk_run_walk(const qwalk_walk_config *config, qwalk_result **out);

/* Native circuit and gate counts for a walk. */
qwalk_status qwalk_compile_walk(const qwalk_walk_config *config, int merge_rotations, qwalk_result **out);
/* Native sequence for one block: "cnot", "toffoli-cnot" or
 * "toffoli-toffoli4-cnot". */
qwalk_status qwalk_compile_block(const char *block, qwalk_result **out);

/* Shot sampling of a compiled walk. `noise` may be NULL for ideal
 * readout; with noise the document also carries the corrected
 * distribution and its error against the ideal one. */
qwalk_status qwalk_sample_walk(const qwalk_walk_config *config, const qwalk_noise *noise, uint64_t shots,
                               uint64_t seed, qwalk_result **out);

/* Two-period DCA (theta1 = 0) after `steps` steps against the free Dirac
 * packet of width `width`. */
qwalk_status qwalk_compare_dirac(double theta2, double width, int steps, double alpha_re, double alpha_im,
                                 double beta_re, double beta_im, qwalk_result **out);

/* Runs the invariant suite. *all_passed is set to 1 or 0. */
qwalk_status qwalk_verify(qwalk_result **out, int *all_passed);

/* Plot tables: "fig3", "fig4", "fig5-synthetic" or "fig6". The document
 * holds {"panels": [{"name", "columns", "rows"}]}. */
qwalk_status qwalk_figure_data(const char *which, uint64_t seed, qwalk_result **out);

/* JSON text of a result; owned by the result. */
const char *qwalk_result_json(const qwalk_result *result);
/* Copies up to `capacity` (position, probability) pairs of the result's
 * distribution and stores the full count in *size. */
qwalk_status qwalk_result_distribution(const qwalk_result *result, int *positions, double *probabilities,
                                       size_t capacity, size_t *size);
void qwalk_result_free(qwalk_result *result);

#ifdef __cplusplus
}
#endif

#endif
