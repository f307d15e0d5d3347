#include <stdio.h>
#include <string.h>
#include <assert.h>
#include "jetcalc.h"

int main(void) {
    JcTower *tower = NULL;
    assert(jc_tower_new(3, 2, &tower) == JC_STATUS_OK);
    assert(jc_tower_kappa(tower) == 1);

    char *out = NULL;
    assert(jc_morse_json(tower, 0, 200, &out) == JC_STATUS_OK);
    assert(strstr(out, "\"delta\":3") != NULL);
    jc_string_free(out);

    assert(jc_integrate_expr(tower, 1, "(u(1)+2*h)^1", false, &out) == JC_STATUS_OK);
    assert(strcmp(out, "d1^2*d2 + d1*d2^2 - 2*d1*d2") == 0);
    jc_string_free(out);

    assert(jc_integrate_expr(tower, 1, "u(", false, &out) == JC_STATUS_PARSE_ERROR);
    char *msg = jc_last_error();
    assert(msg != NULL && strstr(msg, "parse") != NULL);
    jc_string_free(msg);

    assert(jc_degeneracy_json(9, 3, &out) == JC_STATUS_OK);
    assert(strstr(out, "\"hyperbolic\":true") != NULL);
    jc_string_free(out);

    assert(jc_schur_verify(6) == JC_STATUS_OK);
    jc_tower_free(tower);
    printf("ffi smoke ok (version %s)\n", jc_version());
    return 0;
}
