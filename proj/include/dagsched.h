/*
 * dagsched: schedulability analysis of parallel DAG task systems on identical
 * multiprocessors under global rate-monotonic (and global-EDF comparison)
 * scheduling.
 *
 * C API over an opaque task-set handle. All analysis results are returned as
 * JSON strings allocated by the library; release them with ds_string_free().
 * Rational quantities appear both exactly ("p/q" strings) and as decimal
 * approximations. On any failure a status other than DS_OK is returned and
 * ds_last_error() carries a thread-local description.
 *
 * Task-set file format (canonical JSON, sorted ids, byte-stable round trip):
 *   {"tasks":[{"id":1,"period":15,
 *              "vertices":[{"id":1,"wcet":2},...],
 *              "edges":[{"src":1,"dst":2},...]}]}
 */

#ifndef DAGSCHED_H
#define DAGSCHED_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ds_taskset ds_taskset;

typedef enum ds_status {
    DS_OK = 0,
    DS_ERR_INVALID_ARGUMENT = 1,
    DS_ERR_VALIDATION = 2, /* structurally broken task set; details via ds_last_error */
    DS_ERR_PARSE = 3,
    DS_ERR_IO = 4,
    DS_ERR_UNKNOWN_TEST = 5,
    DS_ERR_INTERNAL = 6
} ds_status;

const char* ds_version(void);

/* Message describing the most recent failure on this thread. */
const char* ds_last_error(void);

void ds_string_free(char* s);
void ds_taskset_free(ds_taskset* ts);

/* ---- task-set handles ------------------------------------------------- */

ds_status ds_taskset_from_json(const char* json_text, ds_taskset** out);
ds_status ds_taskset_load(const char* path, ds_taskset** out);
ds_status ds_taskset_to_json(const ds_taskset* ts, char** json_out);
ds_status ds_taskset_save(const ds_taskset* ts, const char* path);

/* ---- analysis --------------------------------------------------------- */

/* Per-task volume/critical-path/utilization/tensity plus set-level metrics
 * normalized against m processors. */
ds_status ds_analyze(const ds_taskset* ts, int m, char** json_out);

/* Runs schedulability tests at m processors. tests_csv selects from:
 *   rm-basic, rm-ut, rm-tighter, rm-work, cab-li, cab-new, edf-ut, edf-cab
 * NULL or "all" runs every test plus the necessary-conditions row.
 * min_m_cap > 0 additionally reports the smallest accepting m per test
 * (searched linearly up to the cap; absent above it). */
ds_status ds_run_tests(const ds_taskset* ts, int m, const char* tests_csv, int min_m_cap,
                       char** json_out);

/* q(t, s) and work(t, s) of one task; speed is "p/q", an integer, or a
 * decimal, and must be >= 1. */
ds_status ds_work_eval(const ds_taskset* ts, int task_id, long long t, const char* speed,
                       char** json_out);

/* ---- generation -------------------------------------------------------- */

/* config_json fields (all optional except seed):
 *   {"seed":1,"preset":"desk"|"paper","n_tasks":[lo,hi],"vertices":[lo,hi],
 *    "wcet":[lo,hi],"p":"1/10","gamma_up":[lo,hi]}
 * Rational-valued fields accept "p/q" / decimal strings; bare JSON numbers
 * are snapped to the 1/1000 grid. info_json (optional) reports the drawn
 * gamma_up and task count. */
ds_status ds_generate(const char* config_json, ds_taskset** out, char** info_json);

/* ---- simulation --------------------------------------------------------- */

/* policy: "rm" | "edf". options_json (may be NULL):
 *   {"pattern":"synchronous"} | {"pattern":{"offsets":[..]}} |
 *   {"pattern":{"releases":[[task_id,time],..]}}      one job per entry
 *   plus "stop_on_miss":bool, "record_busy":bool, "trace":bool.
 * The result carries first_miss (or null), per-job response times, the
 * executed-work total, and when requested the per-step trace text. */
ds_status ds_simulate(const ds_taskset* ts, int m, const char* policy, long long horizon,
                      const char* options_json, char** json_out);

/* Synchronous-release simulation over min(hyperperiod, horizon_cap) steps
 * plus `trials` random-offset patterns; reports the first deadline miss
 * found, if any. */
ds_status ds_falsify(const ds_taskset* ts, int m, int trials, unsigned long long seed,
                     long long horizon_cap, char** json_out);

/* ---- experiments -------------------------------------------------------- */

/* config_json:
 *   {"axis":"utilization"|"gamma"|"ntasks","values":[...],
 *    "sets_per_point":200,"tests":["rm-ut",...],"seed":1,"threads":1,
 *    "preset":"desk"|"paper","p":...,"gamma_up":[lo,hi],"u_range":[lo,hi],
 *    "n_tasks":[lo,hi],"vertices":[lo,hi],"wcet":[lo,hi]}
 * csv_out receives the acceptance-ratio table; svg_out (optional) a plot. */
ds_status ds_experiment(const char* config_json, char** csv_out, char** svg_out);

/* Closed-form utilization thresholds over a tensity grid (rm-ut, rm-basic,
 * edf-ut) or the acceptance-rectangle corners (cab-li, cab-new, edf-cab). */
ds_status ds_bound_curve(const char* test, const char* gammas_csv, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* DAGSCHED_H */
