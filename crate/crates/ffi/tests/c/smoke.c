#include <stdio.h>
#include <string.h>

#include "cubic_approx.h"

int main(void) {
    CaHypersurface *x = NULL;
    CaPoint *p = NULL;
    CaClassification *c = NULL;
    int64_t num = 0, den = 0;
    CaCase kase;

    if (ca_hypersurface_parse("x0^3 + x1^3 + x2^3 + x3^3", 4, &x) != CA_STATUS_OK) return 1;
    if (ca_point_parse("1:-1:0:0", &p) != CA_STATUS_OK) return 2;
    if (!ca_hypersurface_contains(x, p)) return 3;
    if (ca_classify(x, p, "real", 100, &c) != CA_STATUS_OK) return 4;
    if (ca_classification_case(c, &kase) != CA_STATUS_OK || kase != CA_CASE_ON_RATIONAL_LINE) return 5;
    if (ca_classification_alpha(c, &num, &den) != CA_STATUS_OK || num != 1 || den != 1) return 6;
    ca_classification_free(c);
    ca_point_free(p);

    if (ca_point_parse("1:1:1:1", &p) != CA_STATUS_OK) return 7;
    if (ca_classify(x, p, "real", 100, &c) != CA_STATUS_POINT_NOT_ON_X) return 8;
    if (ca_last_error_message() == NULL) return 9;
    printf("%s\n", ca_last_error_message());

    ca_point_free(p);
    ca_hypersurface_free(x);
    printf("ok %s\n", ca_version());
    return 0;
}
