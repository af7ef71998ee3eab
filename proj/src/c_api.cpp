#include "polycoho/polycoho.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "polycoho/error.hpp"
#include "polycoho/report.hpp"
#include "polycoho/serialization.hpp"

struct pc_params {
  polycoho::ParameterMatrix value;
};

struct pc_report {
  polycoho::Report value;
};

namespace {

thread_local std::string last_error;

pc_status fail(pc_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
pc_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return PC_OK;
  } catch (const polycoho::Error& e) {
    return fail(static_cast<pc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PC_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlohmann::json parse_json(const char* text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw polycoho::Error(polycoho::ErrorCode::Parse, e.what());
  }
}

}  // namespace

extern "C" {

const char* pc_version(void) { return POLYCOHO_VERSION; }

const char* pc_status_name(pc_status status) {
  if (status == PC_OK) return "ok";
  if (status == PC_NULL_POINTER) return "null_pointer";
  return polycoho::error_code_name(static_cast<polycoho::ErrorCode>(status));
}

const char* pc_last_error(void) { return last_error.c_str(); }

pc_status pc_params_sample(int n, const char* field, uint64_t seed, long bound, pc_params** out) {
  if (!field || !out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] {
    *out = new pc_params{polycoho::sample_generic_parameters(polycoho::PolygonRank(n),
                                                             polycoho::Field::parse(field), seed, bound)};
  });
}

pc_status pc_params_from_json(const char* json, pc_params** out) {
  if (!json || !out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] { *out = new pc_params{polycoho::parameters_from_json(parse_json(json))}; });
}

pc_status pc_params_to_json(const pc_params* params, char** out) {
  if (!params || !out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] { *out = dup_string(polycoho::parameters_to_json(params->value).dump()); });
}

void pc_params_free(pc_params* params) { delete params; }

pc_status pc_minor(const pc_params* params, int i, int j, int k, char** out) {
  if (!params || !out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] {
    const int labels = params->value.rank().label_count();
    for (int x : {i, j, k})
      if (x < 1 || x > labels)
        throw polycoho::Error(polycoho::ErrorCode::InvalidArgument, "label out of range");
    *out = dup_string(params->value.minor(i, j, k).to_string());
  });
}

pc_status pc_verify_relation(const pc_params* params, int* holds) {
  if (!params || !holds) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] { *holds = polycoho::verify_polygon_relation(params->value).holds ? 1 : 0; });
}

pc_status pc_complex_ranks(const pc_params* params, pc_rank_table* out) {
  if (!params || !out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] {
    const polycoho::RankTable t =
        polycoho::complex_ranks(params->value, polycoho::SlotScheme(params->value.rank()));
    out->n = t.n;
    for (int k = 0; k < 3; ++k) out->dims[k] = t.dims[k];
    out->rank_low = t.rank_low;
    out->rank_high = t.rank_high;
    out->middle_cohomology_dim = t.middle_cohomology_dim;
  });
}

pc_status pc_run_suite(const char* config_json, pc_report** out) {
  if (!out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] {
    polycoho::SuiteConfig cfg;
    if (config_json && *config_json) cfg = polycoho::SuiteConfig::from_json(parse_json(config_json));
    *out = new pc_report{polycoho::run_suite(cfg)};
  });
}

int pc_report_passed(const pc_report* report) { return report && report->value.passed() ? 1 : 0; }

pc_status pc_report_emit(const pc_report* report, const char* format, int include_timings, char** out) {
  if (!report || !format || !out) return fail(PC_NULL_POINTER, "null argument");
  return guarded([&] {
    *out = dup_string(polycoho::emit_report(report->value, polycoho::parse_format(format), include_timings != 0));
  });
}

void pc_report_free(pc_report* report) { delete report; }

void pc_string_free(char* s) { std::free(s); }

}  // extern "C"
