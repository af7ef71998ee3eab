#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polycoho/error.hpp"
#include "polycoho/report.hpp"
#include "polycoho/serialization.hpp"

using namespace polycoho;

TEST_CASE("parameter matrix JSON round trip") {
  for (Field f : {Field::rationals(), Field::prime(101)}) {
    const ParameterMatrix m = sample_generic_parameters(PolygonRank(3), f, 4, 10);
    const nlohmann::json j = parameters_to_json(m);
    CHECK(j.at("n") == 3);
    CHECK(j.at("entries").size() == 3);
    CHECK(parameters_from_json(nlohmann::json::parse(j.dump())) == m);
  }
  const ParameterMatrix n = normalize_leading_identity(sample_generic_parameters(PolygonRank(3), Field::rationals(), 4, 10));
  CHECK(parameters_from_json(parameters_to_json(n)) == n);
  CHECK(parameters_to_json(n).at("entries")[0][0] == "1/1");
}

TEST_CASE("parameter matrix JSON errors") {
  auto code_of = [](const nlohmann::json& j) {
    try {
      parameters_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code_of(nlohmann::json::parse(R"({"n":3,"field":"Q"})")) == ErrorCode::Parse);
  CHECK(code_of(nlohmann::json::parse(R"({"n":3,"field":"Q","entries":[["1"],["2"],["3"]]})")) == ErrorCode::Parse);
  CHECK(code_of(nlohmann::json::parse(R"({"n":9,"field":"Q","entries":[]})")) == ErrorCode::InvalidArgument);
  CHECK(code_of(nlohmann::json::parse(R"({"n":2,"field":"Q","entries":[[1,2,3,4,5],[1,2,3,4,5],[1,2,3,4,5]]})")) ==
        ErrorCode::Parse);
}

TEST_CASE("coloring and rank table JSON") {
  const ParameterMatrix m = sample_generic_parameters(PolygonRank(3), Field::rationals(), 2, 10);
  const std::array<Label, 2> e{2, 5};
  const Coloring c = simplex_vector(m, e).coloring;
  const nlohmann::json j = coloring_to_json(c);
  CHECK(j.size() == 21);
  CHECK(j.contains("3,4"));
  CHECK(coloring_from_json(m.rank(), m.field(), j) == c);
  nlohmann::json extra = j;
  extra["9,9"] = "0/1";
  CHECK_THROWS_AS(coloring_from_json(m.rank(), m.field(), extra), Error);

  const RankTable t = *expected_rank_table(5);
  CHECK(rank_table_from_json(rank_table_to_json(t)) == t);
}

TEST_CASE("rank table formatting") {
  CHECK(format_rank_table(*expected_rank_table(3)) == "21 → 42 → 21, ranks 20/21, H = 1");
  CHECK(format_rank_table(*expected_rank_table(2)) == "10 → 15 → 6, ranks 9/6, H = 0");
  CHECK_FALSE(expected_rank_table(6).has_value());
}

TEST_CASE("suite config validation") {
  SuiteConfig c;
  CHECK_NOTHROW(c.validate());
  c.checks.clear();
  CHECK_THROWS_AS(c.validate(), Error);
  c = SuiteConfig{};
  c.bockstein_prime = 2;
  CHECK_THROWS_AS(c.validate(), Error);
  c = SuiteConfig{};
  c.ns = {6};
  CHECK_THROWS_AS(c.validate(), Error);
  c = SuiteConfig{};
  c.bound = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK_THROWS_AS(SuiteConfig::from_json(nlohmann::json::parse(R"({"checks":["nope"]})")), Error);
  CHECK_THROWS_AS(SuiteConfig::from_json(nlohmann::json::parse(R"({"fields":["Fq:2"]})")), Error);
  CHECK_THROWS_AS(SuiteConfig::from_json(nlohmann::json::parse(R"({"ns":"three"})")), Error);
  CHECK_THROWS_AS(parse_check("Relation"), Error);
  CHECK_THROWS_AS(parse_format("xml"), Error);

  SuiteConfig d;
  d.ns = {2, 4};
  d.fields = {Field::rationals(), Field::prime(1009)};
  d.tamper = Perturbation{3, 0, 1};
  d.checks = {CheckKind::Relation, CheckKind::Ranks};
  const SuiteConfig back = SuiteConfig::from_json(d.to_json());
  CHECK(back.to_json() == d.to_json());
}

TEST_CASE("default suite: all checks hold with the heptagon table") {
  SuiteConfig c;
  c.trials = 10;
  const Report r = run_suite(c);
  CHECK(r.passed());
  CHECK(r.checks.size() == 5 * 6);
  REQUIRE(r.rank_tables.size() == 5);
  for (const RankRow& row : r.rank_tables) {
    CHECK(row.table == *expected_rank_table(3));
    CHECK_FALSE(row.exploratory);
  }
  const nlohmann::json j = report_to_json(r, false);
  for (const auto& check : j.at("checks")) CHECK(check.at("verdict") == "holds");
  CHECK(j.at("meta").at("artifact") == "polycoho");
  CHECK(emit_report(r, ReportFormat::Markdown).find("21 → 42 → 21, ranks 20/21, H = 1") != std::string::npos);
}

TEST_CASE("ranks-only suite for the other polygons") {
  SuiteConfig c;
  c.ns = {2, 4, 5};
  c.seeds = {1};
  c.checks = {CheckKind::Ranks};
  const Report r = run_suite(c);
  CHECK(r.passed());
  REQUIRE(r.rank_tables.size() == 3);
  CHECK(r.rank_tables[0].table == *expected_rank_table(2));
  CHECK(r.rank_tables[1].table == *expected_rank_table(4));
  CHECK(r.rank_tables[2].table == *expected_rank_table(5));
}

TEST_CASE("finite-field rank tables are exploratory") {
  SuiteConfig c;
  c.fields = {Field::prime(7919)};
  c.seeds = {1};
  c.checks = {CheckKind::Relation, CheckKind::Ranks};
  const Report r = run_suite(c);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].name == "relation");
  REQUIRE(r.rank_tables.size() == 1);
  CHECK(r.rank_tables[0].exploratory);
  CHECK(emit_report(r, ReportFormat::Markdown).find("exploratory") != std::string::npos);
}

TEST_CASE("tampered relation produces a failing report with a witness") {
  SuiteConfig c;
  c.seeds = {1, 2};
  c.checks = {CheckKind::Relation};
  c.tamper = Perturbation{5, 2, 0};
  const Report r = run_suite(c);
  CHECK_FALSE(r.passed());
  const nlohmann::json j = report_to_json(r);
  for (const auto& check : j.at("checks")) {
    CHECK(check.at("verdict") == "fails");
    const auto& w = check.at("details").at("witness");
    CHECK(w.at("lhs") != w.at("rhs"));
    CHECK(w.contains("row"));
    CHECK(w.contains("col"));
  }
  CHECK(emit_report(r, ReportFormat::Markdown).find("Failure: relation") != std::string::npos);
}

TEST_CASE("sampling failures are recorded, not thrown") {
  SuiteConfig c;
  c.fields = {Field::prime(3)};
  c.seeds = {1};
  c.bound = 2;
  c.checks = {CheckKind::Relation};
  const Report r = run_suite(c);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].name == "sample");
  CHECK_FALSE(r.checks[0].holds);
  CHECK(r.checks[0].details.at("code") == "genericity");
}

TEST_CASE("explicit parameters replace sampling") {
  SuiteConfig c;
  c.params = sample_generic_parameters(PolygonRank(2), Field::rationals(), 3, 10);
  c.checks = {CheckKind::Relation, CheckKind::Ranks, CheckKind::Cocycle4};
  c.trials = 5;
  const Report r = run_suite(c);
  CHECK(r.passed());
  REQUIRE(r.checks.size() == 3);
  for (const CheckResult& check : r.checks) {
    CHECK(check.n == 2);
    CHECK_FALSE(check.seed.has_value());
  }
  CHECK(report_to_json(r).at("checks")[0].at("seed").is_null());
}

TEST_CASE("reports are deterministic and round trip") {
  SuiteConfig c;
  c.ns = {2, 3};
  c.fields = {Field::rationals(), Field::prime(101)};
  c.seeds = {3, 4};
  c.trials = 5;
  c.workers = 3;
  const Report a = run_suite(c);
  c.workers = 1;
  const Report b = run_suite(c);
  CHECK(report_to_json(a, false).dump() != std::string());
  // Worker count is part of the recorded config, so compare everything else.
  nlohmann::json ja = report_to_json(a, false);
  nlohmann::json jb = report_to_json(b, false);
  ja["meta"]["config"].erase("workers");
  jb["meta"]["config"].erase("workers");
  CHECK(ja.dump() == jb.dump());
  CHECK(report_to_json(run_suite(c), false).dump() == report_to_json(b, false).dump());

  const Report back = report_from_json(nlohmann::json::parse(report_to_json(a).dump()));
  CHECK(back == a);
  CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"meta":{}})")), Error);
}

TEST_CASE("configs where no check applies are rejected") {
  SuiteConfig c;
  c.checks = {CheckKind::Cocycle5};
  c.fields = {Field::prime(101)};
  CHECK_THROWS_AS(c.validate(), Error);
  c.fields = {Field::rationals()};
  c.ns = {4};
  CHECK_THROWS_AS(run_suite(c), Error);
  c.ns = {3, 4};
  CHECK_NOTHROW(c.validate());
}
