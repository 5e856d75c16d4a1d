#include <stdio.h>
#include <string.h>
#include "boolecode.h"

int main(void) {
    BcThresholdParams p = {100, 10, BC_UNSET, 7, BC_UNSET, BC_UNSET};
    BcThreshold t;
    if (bc_security_threshold(BC_SCHEME_KIND_LCC_DIRECT, p, &t) != BC_STATUS_OK || t.beta != 18) return 1;
    if (bc_outer_bound(100, 10) != 45) return 2;

    const char *cfg = "{\"scheme\":\"dnf\",\"n\":10,\"k\":4,"
                      "\"function\":{\"kind\":\"support\",\"m\":4,\"indices\":[0,15]}}";
    BcScheme *s = NULL;
    if (bc_scheme_from_json(cfg, &s) != BC_STATUS_OK) return 3;
    BcTrialResult r;
    if (bc_scheme_run_trial(s, 3, BC_STRATEGY_RANDOM_REPLACE, 5, &r) != BC_STATUS_OK || !r.success) return 4;
    char *json = NULL;
    if (bc_scheme_sweep_json(s, 10, BC_STRATEGY_RANDOM_REPLACE, 1, &json) != BC_STATUS_OK) return 5;
    if (!strstr(json, "\"empirical_threshold\":3")) return 6;
    bc_string_free(json);
    bc_scheme_free(s);

    if (bc_scheme_from_json("{\"scheme\":\"dnf\"}", &s) != BC_STATUS_INVALID_CONFIG || s != NULL) return 7;
    if (bc_last_error() == NULL) return 8;
    printf("ok %s\n", bc_version());
    return 0;
}
