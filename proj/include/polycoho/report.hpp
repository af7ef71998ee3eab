#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polycoho/cohomology.hpp"

namespace polycoho {

enum class CheckKind { Relation, Cocycle4, Ranks, Cocycle5, Dethad, Bockstein };

const char* check_name(CheckKind kind) noexcept;
CheckKind parse_check(std::string_view name);
std::vector<CheckKind> all_checks();

struct SuiteConfig {
  std::vector<int> ns{3};
  std::vector<Field> fields{Field::rationals()};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t trials = 50;
  long bound = 10;
  std::vector<CheckKind> checks = all_checks();
  std::uint64_t bockstein_prime = 3;
  unsigned bockstein_k = 1;
  unsigned bockstein_l = 1;
  /// Debug: perturb one transition-matrix entry in the relation check.
  std::optional<Perturbation> tamper;
  /// Explicit parameter matrix; replaces sampling (ns/fields/seeds are ignored).
  std::optional<ParameterMatrix> params;
  /// 0 = one per hardware thread.
  std::size_t workers = 0;

  /// Throws Error(InvalidArgument) on an unusable configuration.
  void validate() const;

  nlohmann::json to_json() const;
  static SuiteConfig from_json(const nlohmann::json& j);
};

struct CheckResult {
  std::string name;
  int n = 0;
  std::string field;
  std::optional<std::uint64_t> seed;
  bool holds = false;
  nlohmann::json details = nlohmann::json::object();
  double millis = 0.0;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct RankRow {
  std::string field;
  std::optional<std::uint64_t> seed;
  RankTable table;
  /// Finite-field tables carry no verdict.
  bool exploratory = false;
  bool resampled = false;

  friend bool operator==(const RankRow&, const RankRow&) = default;
};

struct Report {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<CheckResult> checks;
  std::vector<RankRow> rank_tables;

  bool passed() const;
  friend bool operator==(const Report&, const Report&) = default;
};

/// Rank table values the heptagon and its neighbours are expected to reproduce.
std::optional<RankTable> expected_rank_table(int n);

/// "21 → 42 → 21, ranks 20/21, H = 1"
std::string format_rank_table(const RankTable& t);

Report run_suite(const SuiteConfig& cfg);

enum class ReportFormat { Json, Markdown };

ReportFormat parse_format(std::string_view name);
nlohmann::json report_to_json(const Report& r, bool include_timings = true);
Report report_from_json(const nlohmann::json& j);
std::string emit_report(const Report& r, ReportFormat format, bool include_timings = true);

}  // namespace polycoho
