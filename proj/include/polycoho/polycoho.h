#ifndef POLYCOHO_H
#define POLYCOHO_H

#include <stddef.h>
#include <stdint.h>

#if defined(POLYCOHO_BUILDING_LIBRARY)
#define PC_API __attribute__((visibility("default")))
#else
#define PC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_INVALID_ARGUMENT = 1,
  PC_DIMENSION = 2,
  PC_DIVISION_BY_ZERO = 3,
  PC_FIELD_MISMATCH = 4,
  PC_GENERICITY = 5,
  PC_SINGULARITY = 6,
  PC_PARSE = 7,
  PC_INTERNAL = 8,
  PC_NULL_POINTER = 9
} pc_status;

typedef struct pc_params pc_params;
typedef struct pc_report pc_report;

typedef struct pc_rank_table {
  int n;
  size_t dims[3];
  size_t rank_low;
  size_t rank_high;
  size_t middle_cohomology_dim;
} pc_rank_table;

PC_API const char* pc_version(void);
PC_API const char* pc_status_name(pc_status status);
/* Message of the last failed call on this thread; empty if none. */
PC_API const char* pc_last_error(void);

/* field: "Q" or "Fq:<q>". */
PC_API pc_status pc_params_sample(int n, const char* field, uint64_t seed, long bound, pc_params** out);
PC_API pc_status pc_params_from_json(const char* json, pc_params** out);
/* *out must be released with pc_string_free. */
PC_API pc_status pc_params_to_json(const pc_params* params, char** out);
PC_API void pc_params_free(pc_params* params);

/* d_ijk as a "num/den" (or residue) string; release with pc_string_free. */
PC_API pc_status pc_minor(const pc_params* params, int i, int j, int k, char** out);
PC_API pc_status pc_verify_relation(const pc_params* params, int* holds);
PC_API pc_status pc_complex_ranks(const pc_params* params, pc_rank_table* out);

/* Config keys: ns, fields, seeds, trials, bound, checks, bockstein{prime,k,l},
   tamper{p,row,col}, params, workers. NULL or "" selects the defaults. */
PC_API pc_status pc_run_suite(const char* config_json, pc_report** out);
PC_API int pc_report_passed(const pc_report* report);
/* format: "json" or "markdown". */
PC_API pc_status pc_report_emit(const pc_report* report, const char* format, int include_timings, char** out);
PC_API void pc_report_free(pc_report* report);

PC_API void pc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
