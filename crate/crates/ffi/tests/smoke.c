#include <stdio.h>
#include "lfun.h"

int main(void) {
    LfunModule *m = NULL;
    LfunSeries *s = NULL;
    if (lfun_module_from_job("command = \"lfun\"\np = 2\n", &m) != LFUN_STATUS_OK) {
        fprintf(stderr, "%s\n", lfun_last_error());
        return 1;
    }
    if (lfun_l_euler(m, 3, 1000000, &s) != LFUN_STATUS_OK) {
        fprintf(stderr, "%s\n", lfun_last_error());
        return 1;
    }
    for (size_t k = 0; k <= lfun_series_degree(s); k++) {
        char *v = NULL;
        lfun_series_coefficient(s, k, &v, NULL, NULL);
        printf(k ? " %s" : "%s", v);
        lfun_string_free(v);
    }
    printf("\n");
    lfun_series_free(s);
    lfun_module_free(m);
    return 0;
}
