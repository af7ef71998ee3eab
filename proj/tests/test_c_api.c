#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "polycoho/polycoho.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  pc_params* p = NULL;
  EXPECT(pc_params_sample(3, "Q", 1, 10, &p) == PC_OK);

  int holds = 0;
  EXPECT(pc_verify_relation(p, &holds) == PC_OK);
  EXPECT(holds == 1);

  pc_rank_table t;
  EXPECT(pc_complex_ranks(p, &t) == PC_OK);
  EXPECT(t.n == 3 && t.dims[0] == 21 && t.dims[1] == 42 && t.dims[2] == 21);
  EXPECT(t.rank_low == 20 && t.rank_high == 21 && t.middle_cohomology_dim == 1);

  char* d = NULL;
  EXPECT(pc_minor(p, 1, 1, 2, &d) == PC_OK);
  EXPECT(d && strcmp(d, "0/1") == 0);
  pc_string_free(d);
  EXPECT(pc_minor(p, 1, 2, 9, &d) == PC_INVALID_ARGUMENT);
  EXPECT(strlen(pc_last_error()) > 0);

  char* json = NULL;
  EXPECT(pc_params_to_json(p, &json) == PC_OK);
  pc_params* q = NULL;
  EXPECT(pc_params_from_json(json, &q) == PC_OK);
  char* again = NULL;
  EXPECT(pc_params_to_json(q, &again) == PC_OK);
  EXPECT(json && again && strcmp(json, again) == 0);
  pc_string_free(json);
  pc_string_free(again);
  pc_params_free(q);
  pc_params_free(p);

  EXPECT(pc_params_sample(7, "Q", 1, 10, &p) == PC_INVALID_ARGUMENT);
  EXPECT(pc_params_sample(3, "Fq:3", 1, 2, &p) == PC_GENERICITY);
  EXPECT(pc_params_from_json("{not json", &p) == PC_PARSE);
  EXPECT(pc_verify_relation(NULL, &holds) == PC_NULL_POINTER);
  EXPECT(strcmp(pc_status_name(PC_GENERICITY), "genericity") == 0);
  EXPECT(strcmp(pc_status_name(PC_OK), "ok") == 0);

  pc_report* r = NULL;
  EXPECT(pc_run_suite("{\"ns\":[2],\"seeds\":[1],\"checks\":[\"relation\",\"ranks\"]}", &r) == PC_OK);
  EXPECT(pc_report_passed(r) == 1);
  char* text = NULL;
  EXPECT(pc_report_emit(r, "json", 0, &text) == PC_OK);
  EXPECT(text && strstr(text, "\"verdict\": \"holds\"") != NULL);
  pc_string_free(text);
  EXPECT(pc_report_emit(r, "yaml", 0, &text) == PC_INVALID_ARGUMENT);
  pc_report_free(r);

  EXPECT(pc_run_suite("{\"checks\":[]}", &r) == PC_INVALID_ARGUMENT);
  EXPECT(pc_run_suite("{\"ns\":[3],\"seeds\":[1],\"checks\":[\"relation\"],\"tamper\":{\"p\":1,\"row\":0,\"col\":0}}",
                      &r) == PC_OK);
  EXPECT(pc_report_passed(r) == 0);
  pc_report_free(r);

  EXPECT(strlen(pc_version()) > 0);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
