#include <stdio.h>
#include "syzygy_forge.h"
int main(void) {
  SfModule *m = NULL;
  if (sf_module_from_example("nc3", 32003, &m) != SfStatus_Ok) return 1;
  size_t b[8], len = 0;
  if (sf_betti_totals(m, b, 8, &len) != SfStatus_Ok) return 2;
  printf("betti:");
  for (size_t i = 0; i < len; i++) printf(" %zu", b[i]);
  char *js = NULL;
  sf_classify_json(m, 1, &js);
  printf("\n%s\n", js);
  sf_string_free(js);
  sf_module_free(m);
  if (sf_module_from_json("{", &m) != SfStatus_ParseError) return 3;
  printf("err: %s\n", sf_last_error());
  return 0;
}
