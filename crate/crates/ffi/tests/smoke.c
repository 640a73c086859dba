#include <stdio.h>
#include <string.h>
#include "sphex.h"

int main(void) {
    SphexTorusAction *a = NULL;
    size_t q = 0, n = 0;
    if (sphex_torus_from_json("{\"torus_rank\":1,\"weights\":[[1],[-1],[1],[-1]]}", &a) != SPHEX_STATUS_OK)
        return 1;
    if (sphex_torus_quotient_dim(a, &q) != SPHEX_STATUS_OK || sphex_torus_null_cone_dim(a, &n) != SPHEX_STATUS_OK)
        return 2;
    printf("quotient %zu null cone %zu\n", q, n);
    sphex_torus_free(a);

    SphexMonoid *m = NULL;
    if (sphex_monoid_from_json("[1,", &m) != SPHEX_STATUS_PARSE || m != NULL)
        return 3;
    printf("parse error: %s\n", sphex_last_error());

    char *report = NULL;
    if (sphex_witness_run("2-2", NULL, 3, 1, &report) != SPHEX_STATUS_OK)
        return 4;
    if (strstr(report, "\"passed\":true") == NULL)
        return 5;
    sphex_string_free(report);
    printf("sphex %s\n", sphex_version());
    return 0;
}
