/* Thresholding-bandit simulation library, C surface.
 *
 * All entry points return a tbp_status; every non-OK return leaves a
 * human-readable message in tbp_last_error() (thread-local, valid until the
 * next failing call on the same thread). Objects come back as opaque handles
 * and must be released with the matching *_free. Strings returned through
 * char** outputs are malloc'd; release them with tbp_string_free.
 */
#ifndef TBP_H
#define TBP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tbp_status {
  TBP_OK = 0,
  TBP_ERR_INVALID_ARGUMENT = 1, /* bad parameter or malformed problem */
  TBP_ERR_PARSE = 2,            /* unknown preset/policy name */
  TBP_ERR_CONFIG = 3,           /* config rejected; message has field path */
  TBP_ERR_DOMAIN = 4,           /* undefined quantity (zero gap, tied max) */
  TBP_ERR_BUDGET = 5,           /* horizon below the policy's minimum */
  TBP_ERR_INTERNAL = 6
} tbp_status;

typedef struct tbp_problem tbp_problem;
typedef struct tbp_result tbp_result;

/* One (policy, horizon) estimate. `policy` stays owned by the result. */
typedef struct tbp_cell {
  const char* policy;
  int64_t horizon;
  int64_t replications;
  double value; /* error rate, or mean regret in regret mode */
  double ci_half_width;
  int censored; /* 1 when value is exactly 0 (log plots draw it hollow) */
  double wall_time_ms;
} tbp_cell;

const char* tbp_version(void);
const char* tbp_last_error(void);
void tbp_string_free(char* s);

/* Problems ---------------------------------------------------------------- */

/* name: exp1|exp2|exp3; family: bernoulli|gaussian. */
tbp_status tbp_problem_preset(const char* name, const char* family,
                              tbp_problem** out);
/* {"arms":[{"kind":...}...],"tau":...,"epsilon":...} or
   {"preset":...,"family":...[,"geometric_d":...]} */
tbp_status tbp_problem_from_json(const char* json_text, tbp_problem** out);
tbp_status tbp_problem_to_json(const tbp_problem* problem, char** out);
size_t tbp_problem_num_arms(const tbp_problem* problem);
tbp_status tbp_problem_true_mean(const tbp_problem* problem, size_t arm,
                                 double* out);
tbp_status tbp_problem_gap(const tbp_problem* problem, size_t arm,
                           double* out);
tbp_status tbp_problem_complexity(const tbp_problem* problem, double* out);
void tbp_problem_free(tbp_problem* problem);

/* Games ------------------------------------------------------------------- */

/* Plays one seeded game of `policy_id` ("apt", "ua", "ucbe:<i>", "csar").
 * pulls and accepted must hold tbp_problem_num_arms entries; accepted is
 * 0/1 per arm. Any output pointer may be NULL. */
tbp_status tbp_run_game(const tbp_problem* problem, const char* policy_id,
                        int64_t horizon, uint64_t seed, uint64_t stream_id,
                        int64_t* pulls, int* accepted, double* reward_sum);

/* Experiments ------------------------------------------------------------- */

/* config: {"problem": <doc>} xor {"family":{"d":[...],"tau":..,"epsilon":..}},
 * "policies":[...], "horizons":[...], "replications":N,
 * "master_seed":S (default 0), "mode":"threshold_loss"|"best_arm_error"|
 * "cumulative_regret" (default threshold_loss). */
tbp_status tbp_config_validate(const char* config_json);
/* threads <= 0 means all hardware threads. Results are bitwise identical
 * for any thread count (wall_time_ms excepted). */
tbp_status tbp_experiment_run(const char* config_json, int threads,
                              tbp_result** out);

size_t tbp_result_num_cells(const tbp_result* result);
tbp_status tbp_result_cell(const tbp_result* result, size_t index,
                           tbp_cell* out);
tbp_status tbp_result_to_csv(const tbp_result* result, char** out);
tbp_status tbp_result_to_json(const tbp_result* result, char** out);
tbp_status tbp_result_to_svg(const tbp_result* result, char** out);
void tbp_result_free(tbp_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TBP_H */
