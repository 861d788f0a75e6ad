#include <stdio.h>
#include <string.h>
#include "multizero.h"

int main(void) {
    MzExpansion *e = NULL;
    MzReport *r = NULL;
    MzVerdict v;
    char *json = NULL;

    if (mz_expansion_new("monomial", NULL, "1,-1,-1,0,1,1,-1", &e) != MZ_STATUS_OK) return 1;
    if (mz_check_eq2(e, &r) != MZ_STATUS_OK) return 2;
    if (mz_report_verdict(r, &v) != MZ_STATUS_OK || v != MZ_VERDICT_HOLDS) return 3;
    if (mz_report_json(r, &json) != MZ_STATUS_OK) return 4;
    if (strstr(json, "\"rhs\":\"28/15\"") == NULL) return 5;
    puts(json);
    mz_string_free(json);
    mz_report_free(r);

    if (mz_check_eq2(NULL, &r) != MZ_STATUS_NULL_POINTER) return 6;
    if (mz_last_error() == NULL) return 7;
    mz_expansion_free(e);
    return 0;
}
