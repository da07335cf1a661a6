#include <stdio.h>
#include <string.h>
#include "satgame.h"

int main(void) {
    SgFamily *f = NULL;
    if (sg_family_new(4, 2, &f) != SG_STATUS_OK) return 1;
    uint32_t sets[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (int i = 0; i < 3; i++)
        if (sg_family_push(f, sets[i], 2) != SG_STATUS_OK) return 2;
    uint32_t disjoint[2] = {3, 4};
    if (sg_family_push(f, disjoint, 2) != SG_STATUS_RULE_VIOLATION) return 3;
    if (strstr(sg_last_error_message(), "disjoint") == NULL) return 4;
    uint32_t tau = 0;
    if (sg_family_covering_number(f, &tau, NULL, 0) != SG_STATUS_OK || tau != 2) return 5;
    sg_family_free(f);

    uint64_t v = 0;
    if (sg_solve(6, 2, SG_KIND_SATURATION, SG_ROLE_MAXIMIZER, &v) != SG_STATUS_OK || v != 5) return 6;

    char *json = NULL;
    if (sg_play_json(5, 2, SG_KIND_SATURATION, SG_ROLE_MINIMIZER, "lex-first", "lex-first",
                     SG_MODE_FULL, 0, &json) != SG_STATUS_OK) return 7;
    if (strstr(json, "\"score\": 4") == NULL) return 8;
    sg_string_free(json);
    puts("ok");
    return 0;
}
