/* Plain-C consumer of the shared library: the header must compile as C and
 * the basic lifecycle must work without any C++ runtime in the client. */

#include <stdio.h>
#include <string.h>

#include "dagsched.h"

static const char *kSet =
    "{\"tasks\":[{\"id\":1,\"period\":8,"
    "\"vertices\":[{\"id\":1,\"wcet\":4}],\"edges\":[]}]}";

int main(void) {
    ds_taskset *ts = NULL;
    char *out = NULL;
    int failures = 0;

    if (strcmp(ds_version(), "") == 0) {
        fprintf(stderr, "empty version\n");
        ++failures;
    }
    if (ds_taskset_from_json(kSet, &ts) != DS_OK) {
        fprintf(stderr, "parse failed: %s\n", ds_last_error());
        return 1;
    }
    if (ds_run_tests(ts, 1, "rm-work", 0, &out) != DS_OK) {
        fprintf(stderr, "test failed: %s\n", ds_last_error());
        ++failures;
    } else {
        if (strstr(out, "SCHEDULABLE") == NULL) {
            fprintf(stderr, "expected an accept in %s\n", out);
            ++failures;
        }
        ds_string_free(out);
    }
    if (ds_taskset_load("missing.json", &ts) != DS_ERR_IO) {
        fprintf(stderr, "expected DS_ERR_IO\n");
        ++failures;
    }
    ds_taskset_free(ts);
    return failures == 0 ? 0 : 1;
}
