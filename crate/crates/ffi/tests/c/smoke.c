#include <stdio.h>
#include "fskein.h"

int main(void) {
    FskEngine *e = NULL;
    char *s = NULL;
    if (fsk_engine_from_preset("higman:4", &e) != FSK_OK) {
        fprintf(stderr, "%s\n", fsk_last_error());
        return 1;
    }
    if (fsk_engine_abelianization(e, &s) == FSK_OK) {
        puts(s);
        fsk_string_free(s);
    }
    fsk_engine_free(e);
    return 0;
}
