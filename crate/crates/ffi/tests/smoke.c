#include <stdio.h>
#include <string.h>
#include "braided_rmatrix.h"

int main(void) {
    BrmModel *m = NULL;
    if (brm_model_new("cp2", &m) != BRM_STATUS_OK) return 1;
    size_t d = 0;
    if (brm_model_dim(m, &d) != BRM_STATUS_OK || d != 3) return 2;
    BrmComplex buf[81];
    BrmComplex p = {1.0, 0.0}, l = {0.7, 0.2};
    /* at p = 1 the B family is the identity */
    if (brm_model_eval(m, BRM_FAMILY_B, p, l, buf, 81) != BRM_STATUS_OK) return 3;
    for (int i = 0; i < 9; i++)
        for (int j = 0; j < 9; j++)
            if (buf[i * 9 + j].re != (i == j ? 1.0 : 0.0) || buf[i * 9 + j].im != 0.0) return 4;
    BrmCheckResult r;
    if (brm_run_check(m, "QYBE_A", 2, 7, &r) != BRM_STATUS_OK || !r.passed || r.samples != 2) return 5;
    if (brm_run_check(m, "NOPE", 2, 7, &r) != BRM_STATUS_INVALID_ARGUMENT) return 6;
    char msg[128];
    if (brm_last_error(msg, sizeof msg) == 0 || strstr(msg, "NOPE") == NULL) return 7;
    brm_model_free(m);
    puts("ok");
    return 0;
}
