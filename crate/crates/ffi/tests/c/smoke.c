#include <stdio.h>
#include <string.h>

#include "gamma_groups.h"

int main(void) {
    GgGroup *pauli = NULL;
    if (gg_catalog_group("pauli", &pauli) != GG_STATUS_OK) {
        fprintf(stderr, "lookup failed: %s\n", gg_last_error_message());
        return 1;
    }
    if (gg_group_order(pauli) != 16 || gg_group_class_count(pauli) != 10) {
        return 2;
    }
    char *json = NULL;
    if (gg_analyze_json(pauli, &json) != GG_STATUS_OK || strstr(json, "\"census\":\"8x1+2x2\"") == NULL) {
        return 3;
    }
    gg_string_free(json);
    gg_group_free(pauli);

    GgGroup *missing = NULL;
    if (gg_catalog_group("missing", &missing) != GG_STATUS_UNKNOWN_NAME || missing != NULL) {
        return 4;
    }
    printf("ok %s\n", gg_version());
    return 0;
}
