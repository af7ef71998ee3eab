#include "polycoho/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "polycoho/error.hpp"
#include "polycoho/serialization.hpp"

namespace polycoho {

namespace {

constexpr std::array<std::pair<CheckKind, const char*>, 6> kCheckNames{{
    {CheckKind::Relation, "relation"},
    {CheckKind::Cocycle4, "cocycle4"},
    {CheckKind::Ranks, "ranks"},
    {CheckKind::Cocycle5, "cocycle5"},
    {CheckKind::Dethad, "dethad"},
    {CheckKind::Bockstein, "bockstein"},
}};

constexpr std::uint64_t kResampleStride = 1000003;
constexpr int kRankResamples = 3;

bool applicable(CheckKind kind, int n, Field field) {
  switch (kind) {
    case CheckKind::Relation: return true;
    case CheckKind::Ranks: return true;
    case CheckKind::Cocycle4:
    case CheckKind::Bockstein: return field.is_rational();
    case CheckKind::Cocycle5:
    case CheckKind::Dethad: return field.is_rational() && n == 3;
  }
  return false;
}

}  // namespace

const char* check_name(CheckKind kind) noexcept {
  for (const auto& [k, name] : kCheckNames)
    if (k == kind) return name;
  return "unknown";
}

CheckKind parse_check(std::string_view name) {
  for (const auto& [k, n] : kCheckNames)
    if (name == n) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + std::string(name) + "'");
}

std::vector<CheckKind> all_checks() {
  std::vector<CheckKind> out;
  for (const auto& entry : kCheckNames) out.push_back(entry.first);
  return out;
}

void SuiteConfig::validate() const {
  if (checks.empty()) throw Error(ErrorCode::InvalidArgument, "no checks enabled");
  if (!params) {
    if (ns.empty()) throw Error(ErrorCode::InvalidArgument, "no polygon ranks given");
    if (fields.empty()) throw Error(ErrorCode::InvalidArgument, "no fields given");
    if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "no seeds given");
    for (int n : ns) (void)PolygonRank(n);
  }
  if (bound < 2) throw Error(ErrorCode::InvalidArgument, "bound must be >= 2");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  if (bockstein_prime == 2 || !is_prime(bockstein_prime))
    throw Error(ErrorCode::InvalidArgument, "bockstein prime must be an odd prime");
  if (bockstein_k == 0 || bockstein_l == 0)
    throw Error(ErrorCode::InvalidArgument, "bockstein k and l must be positive");
  const std::vector<int> rank_list = params ? std::vector<int>{params->rank().n()} : ns;
  const std::vector<Field> field_list = params ? std::vector<Field>{params->field()} : fields;
  bool any = false;
  for (CheckKind c : checks)
    for (int n : rank_list)
      for (Field f : field_list) any = any || applicable(c, n, f);
  if (!any) {
    throw Error(ErrorCode::InvalidArgument,
                "no enabled check applies; cocycle5 and dethad need n = 3 over Q, cocycle4 and bockstein need Q");
  }
}

nlohmann::json SuiteConfig::to_json() const {
  nlohmann::json j;
  j["ns"] = ns;
  nlohmann::json fs = nlohmann::json::array();
  for (Field f : fields) fs.push_back(f.to_string());
  j["fields"] = fs;
  j["seeds"] = seeds;
  j["trials"] = trials;
  j["bound"] = bound;
  nlohmann::json cs = nlohmann::json::array();
  for (CheckKind c : checks) cs.push_back(check_name(c));
  j["checks"] = cs;
  j["bockstein"] = {{"prime", bockstein_prime}, {"k", bockstein_k}, {"l", bockstein_l}};
  j["tamper"] = tamper ? nlohmann::json{{"p", tamper->p}, {"row", tamper->row}, {"col", tamper->col}}
                       : nlohmann::json(nullptr);
  j["params"] = params ? parameters_to_json(*params) : nlohmann::json(nullptr);
  j["workers"] = workers;
  return j;
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  SuiteConfig c;
  try {
    if (j.contains("ns")) c.ns = j.at("ns").get<std::vector<int>>();
    if (j.contains("fields")) {
      c.fields.clear();
      for (const auto& f : j.at("fields")) c.fields.push_back(Field::parse(f.get<std::string>()));
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("bound")) c.bound = j.at("bound").get<long>();
    if (j.contains("checks")) {
      c.checks.clear();
      for (const auto& name : j.at("checks")) c.checks.push_back(parse_check(name.get<std::string>()));
    }
    if (j.contains("bockstein")) {
      const auto& b = j.at("bockstein");
      c.bockstein_prime = b.value("prime", c.bockstein_prime);
      c.bockstein_k = b.value("k", c.bockstein_k);
      c.bockstein_l = b.value("l", c.bockstein_l);
    }
    if (j.contains("tamper") && !j.at("tamper").is_null()) {
      const auto& t = j.at("tamper");
      c.tamper = Perturbation{t.value("p", 1), t.value("row", std::size_t{0}), t.value("col", std::size_t{0})};
    }
    if (j.contains("params") && !j.at("params").is_null()) c.params = parameters_from_json(j.at("params"));
    if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("suite config: ") + e.what());
  }
  c.validate();
  return c;
}

bool Report::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.holds; });
}

std::optional<RankTable> expected_rank_table(int n) {
  switch (n) {
    case 2: return RankTable{2, {10, 15, 6}, 9, 6, 0};
    case 3: return RankTable{3, {21, 42, 21}, 20, 21, 1};
    case 4: return RankTable{4, {36, 90, 55}, 35, 55, 0};
    case 5: return RankTable{5, {55, 165, 120}, 54, 111, 0};
    default: return std::nullopt;
  }
}

std::string format_rank_table(const RankTable& t) {
  std::ostringstream os;
  os << t.dims[0] << " → " << t.dims[1] << " → " << t.dims[2] << ", ranks " << t.rank_low << "/"
     << t.rank_high << ", H = " << t.middle_cohomology_dim;
  return os.str();
}

namespace {

struct Job {
  ParameterMatrix params;
  std::optional<std::uint64_t> seed;
};

struct JobOutput {
  std::vector<CheckResult> checks;
  std::vector<RankRow> ranks;
};

nlohmann::json seed_json(const std::optional<std::uint64_t>& s) {
  return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
}

// Random integer combination of the global basis.
Coloring random_permitted(const std::vector<Coloring>& basis, std::mt19937_64& rng) {
  Coloring c(basis.front().rank(), basis.front().field());
  for (const Coloring& b : basis) {
    const long k = static_cast<long>(rng() % 7) - 3;
    if (k != 0) c += Scalar(c.field(), k) * b;
  }
  return c;
}

void run_relation(const Job& job, const SuiteConfig& cfg, CheckResult& out) {
  const RelationVerdict v = verify_polygon_relation(job.params, cfg.tamper);
  out.holds = v.holds;
  out.details["slots"] = job.params.rank().slot_count();
  if (cfg.tamper) out.details["tampered"] = true;
  if (v.witness) {
    out.details["witness"] = {{"row", v.witness->row},
                              {"col", v.witness->col},
                              {"lhs", v.witness->lhs.to_string()},
                              {"rhs", v.witness->rhs.to_string()}};
  }
}

void run_cocycle4(const Job& job, const SuiteConfig& cfg, CheckResult& out) {
  const ParameterMatrix& m = job.params;
  const SlotScheme scheme(m.rank());
  const std::vector<Coloring> basis = global_basis(m, scheme);
  std::mt19937_64 rng(job.seed.value_or(0));
  std::size_t vanishing = 0;
  std::size_t tested = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Coloring x = random_permitted(basis, rng);
    const Coloring y = random_permitted(basis, rng);
    for (Label p = 1; p <= m.rank().label_count(); ++p) {
      ++tested;
      if (scalar_product_4(m, p, x, y).is_zero()) ++vanishing;
    }
  }
  const Matrix low = coboundary_matrix(m, scheme, CoboundaryLevel::Low);
  const Vector phi = cocycle4_cochain(m).face_coefficients;
  const bool in_kernel = is_zero_vector(low * phi);
  const std::size_t kernel_dim = low.cols() - rank(low);
  bool proportional = true;
  for (Label p = 1; p <= m.rank().label_count(); ++p) {
    const Vector c = cocycle4_coefficients(m, p);
    Vector restricted;
    for (Label i = 1; i <= m.rank().label_count(); ++i)
      if (i != p) restricted.push_back(phi[face_index(m.rank(), Face::of(i, p))]);
    for (std::size_t a = 1; a < c.size(); ++a)
      if (!(restricted[a] * c[0] == restricted[0] * c[a])) proportional = false;
  }
  out.holds = vanishing == tested && in_kernel && kernel_dim == 1 && proportional;
  out.details = {{"pairs_tested", tested},
                 {"pairs_vanishing", vanishing},
                 {"in_kernel", in_kernel},
                 {"kernel_dim", kernel_dim},
                 {"per_simplex_proportional", proportional}};
}

void run_ranks(const Job& job, const SuiteConfig& cfg, CheckResult& out, JobOutput& sink) {
  const int n = job.params.rank().n();
  const std::optional<RankTable> expected = expected_rank_table(n);
  ParameterMatrix m = job.params;
  RankTable t = complex_ranks(m, SlotScheme(m.rank()));
  bool resampled = false;
  const bool rational = m.field().is_rational();
  if (rational && job.seed && expected) {
    for (int k = 1; k <= kRankResamples &&
                    (t.rank_low < expected->rank_low || t.rank_high < expected->rank_high);
         ++k) {
      m = sample_generic_parameters(m.rank(), m.field(), *job.seed + k * kResampleStride, cfg.bound);
      t = complex_ranks(m, SlotScheme(m.rank()));
      resampled = true;
    }
  }
  sink.ranks.push_back({m.field().to_string(), job.seed, t, !rational, resampled});
  out.holds = expected && t == *expected;
  out.details = {{"table", rank_table_to_json(t)}, {"summary", format_rank_table(t)}, {"resampled", resampled}};
  if (expected) out.details["expected"] = rank_table_to_json(*expected);
}

void run_cocycle5(const Job& job, CheckResult& out) {
  const ParameterMatrix& m = job.params;
  const SlotScheme scheme(m.rank());
  const FiveCocycle five(m, scheme);

  std::vector<Edge> edges;
  for (Label i = 1; i <= 7; ++i)
    for (Label j = i + 1; j <= 7; ++j) edges.push_back({i, j});
  std::size_t pairs = 0;
  std::size_t identity_ok = 0;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a; b < edges.size(); ++b) {
      Scalar sum = Scalar::zero(m.field());
      for (Label p = 1; p <= 7; ++p) {
        const Scalar v = five.product(p, edges[a], edges[b]);
        sum += p % 2 == 0 ? v : -v;
      }
      ++pairs;
      if (sum.is_zero()) ++identity_ok;
    }
  }

  const Matrix low = coboundary_matrix(m, scheme, CoboundaryLevel::Low);
  const Matrix high = coboundary_matrix(m, scheme, CoboundaryLevel::High);
  const Vector c = five.cochain().flatten();
  const bool closed = is_zero_vector(high * c);
  const NontrivialityVerdict nt = nontriviality_check(m, scheme);
  Matrix col(c.size(), 1, m.field());
  for (std::size_t r = 0; r < c.size(); ++r) col(r, 0) = c[r];
  const std::size_t rank_low = rank(low);
  const std::size_t rank_high = rank(high);
  const std::size_t span_dim = rank(low.hconcat(col));
  const std::size_t kernel_high = high.cols() - rank_high;

  const auto consistency = five.consistency();
  bool gram_independent = true;
  for (Label p = 1; p <= 7; ++p) {
    const auto first = five.basis_edges(p);
    const auto second = five.basis_edges(p, first);
    if (!(five.gram(p, first) == five.gram(p, second))) gram_independent = false;
  }

  out.holds = identity_ok == pairs && closed && nt.nontrivial && nt.witness_distinct &&
              kernel_high == span_dim && span_dim == rank_low + 1 && consistency.violations == 0 &&
              gram_independent;
  out.details = {{"edge_pairs", pairs},
                 {"cocycle_identity_holds", identity_ok},
                 {"in_kernel_high", closed},
                 {"nontrivial", nt.nontrivial},
                 {"witness",
                  {nt.witness_products[0].to_string(), nt.witness_products[1].to_string(),
                   nt.witness_products[2].to_string()}},
                 {"witness_distinct", nt.witness_distinct},
                 {"kernel_high_dim", kernel_high},
                 {"image_low_dim", rank_low},
                 {"image_low_plus_cocycle_dim", span_dim},
                 {"consistency_identities", consistency.identities},
                 {"consistency_violations", consistency.violations},
                 {"gram_edge_independent", gram_independent}};
}

void run_dethad(const Job& job, CheckResult& out) {
  const ParameterMatrix normalized = normalize_leading_identity(job.params);
  Matrix block(3, 3, normalized.field());
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) block(r, c) = normalized.entries()(r, 3 + c);
  const Scalar lhs = det(eta_matrix(normalized, 7));
  const Scalar rhs = -dethad(block);
  out.holds = lhs == rhs;
  out.details = {{"det_eta_7", lhs.to_string()}, {"minus_dethad", rhs.to_string()}};
}

void run_bockstein(const Job& job, const SuiteConfig& cfg, CheckResult& out) {
  BocksteinOptions opts;
  opts.prime = cfg.bockstein_prime;
  opts.k = cfg.bockstein_k;
  opts.l = cfg.bockstein_l;
  opts.trials = cfg.trials;
  opts.seed = job.seed.value_or(0);
  const BocksteinResult r = bockstein_lift(job.params, SlotScheme(job.params.rank()), opts);
  out.holds = r.divisible && r.divided_is_cocycle;
  out.details = {{"prime", opts.prime},
                 {"k", opts.k},
                 {"l", opts.l},
                 {"trials", opts.trials},
                 {"evaluations", r.evaluations},
                 {"divisible", r.divisible},
                 {"divided_is_cocycle", r.divided_is_cocycle},
                 {"divided_nonzero", r.divided_nonzero}};
  if (r.counterexample) {
    out.details["counterexample"] = {{"trial", r.counterexample->trial},
                                     {"simplex", r.counterexample->simplex},
                                     {"value", r.counterexample->value.get_str()},
                                     {"x", coloring_to_json(r.counterexample->x)},
                                     {"y", coloring_to_json(r.counterexample->y)}};
  }
}

JobOutput run_job(const Job& job, const SuiteConfig& cfg) {
  JobOutput out;
  for (CheckKind kind : cfg.checks) {
    if (!applicable(kind, job.params.rank().n(), job.params.field())) continue;
    CheckResult r;
    r.name = check_name(kind);
    r.n = job.params.rank().n();
    r.field = job.params.field().to_string();
    r.seed = job.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (kind) {
        case CheckKind::Relation: run_relation(job, cfg, r); break;
        case CheckKind::Cocycle4: run_cocycle4(job, cfg, r); break;
        case CheckKind::Ranks: run_ranks(job, cfg, r, out); break;
        case CheckKind::Cocycle5: run_cocycle5(job, r); break;
        case CheckKind::Dethad: run_dethad(job, r); break;
        case CheckKind::Bockstein: run_bockstein(job, cfg, r); break;
      }
    } catch (const Error& e) {
      r.holds = false;
      r.details = {{"error", e.what()}, {"code", error_code_name(e.code())}};
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    // Finite-field rank tables are exploratory and carry no verdict.
    if (kind == CheckKind::Ranks && !job.params.field().is_rational()) continue;
    out.checks.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Report report;
  report.meta = {{"artifact", "polycoho"}, {"version", POLYCOHO_VERSION}, {"config", cfg.to_json()}};

  std::vector<std::optional<Job>> jobs;
  std::vector<CheckResult> sampling_failures;
  if (cfg.params) {
    jobs.push_back(Job{*cfg.params, std::nullopt});
  } else {
    for (int n : cfg.ns)
      for (Field f : cfg.fields)
        for (std::uint64_t seed : cfg.seeds) {
          try {
            jobs.push_back(Job{sample_generic_parameters(PolygonRank(n), f, seed, cfg.bound), seed});
          } catch (const Error& e) {
            CheckResult r{"sample", n, f.to_string(), seed, false,
                          {{"error", e.what()}, {"code", error_code_name(e.code())}}, 0.0};
            sampling_failures.push_back(std::move(r));
          }
        }
  }

  std::vector<JobOutput> outputs(jobs.size());
  std::size_t workers = cfg.workers ? cfg.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(jobs.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) outputs[k] = run_job(*jobs[k], cfg);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  report.checks = std::move(sampling_failures);
  for (JobOutput& o : outputs) {
    for (auto& c : o.checks) report.checks.push_back(std::move(c));
    for (auto& r : o.ranks) report.rank_tables.push_back(std::move(r));
  }
  return report;
}

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(name) + "'");
}

nlohmann::json report_to_json(const Report& r, bool include_timings) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::json j{{"name", c.name},
                     {"n", c.n},
                     {"field", c.field},
                     {"seed", seed_json(c.seed)},
                     {"verdict", c.holds ? "holds" : "fails"},
                     {"details", c.details}};
    if (include_timings) j["millis"] = c.millis;
    checks.push_back(std::move(j));
  }
  nlohmann::json tables = nlohmann::json::array();
  for (const RankRow& row : r.rank_tables) {
    nlohmann::json j = rank_table_to_json(row.table);
    j["field"] = row.field;
    j["seed"] = seed_json(row.seed);
    j["exploratory"] = row.exploratory;
    j["resampled"] = row.resampled;
    tables.push_back(std::move(j));
  }
  return {{"meta", r.meta}, {"checks", checks}, {"rank_tables", tables}};
}

Report report_from_json(const nlohmann::json& j) {
  try {
    Report r;
    r.meta = j.at("meta");
    auto seed_of = [](const nlohmann::json& s) -> std::optional<std::uint64_t> {
      if (s.is_null()) return std::nullopt;
      return s.get<std::uint64_t>();
    };
    for (const auto& c : j.at("checks")) {
      const std::string verdict = c.at("verdict").get<std::string>();
      if (verdict != "holds" && verdict != "fails") throw Error(ErrorCode::Parse, "bad verdict " + verdict);
      r.checks.push_back({c.at("name").get<std::string>(), c.at("n").get<int>(),
                          c.at("field").get<std::string>(), seed_of(c.at("seed")), verdict == "holds",
                          c.at("details"), c.value("millis", 0.0)});
    }
    for (const auto& t : j.at("rank_tables")) {
      r.rank_tables.push_back({t.at("field").get<std::string>(), seed_of(t.at("seed")), rank_table_from_json(t),
                               t.at("exploratory").get<bool>(), t.at("resampled").get<bool>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("report: ") + e.what());
  }
}

namespace {

std::string markdown(const Report& r, bool include_timings) {
  std::ostringstream os;
  os << "# Polygon cohomology report\n\n";
  os << "version " << r.meta.value("version", std::string("?")) << ", overall: "
     << (r.passed() ? "all checks hold" : "FAILURES") << "\n\n";
  os << "## Checks\n\n| check | n | field | seed | verdict |" << (include_timings ? " ms |" : "") << "\n";
  os << "|---|---|---|---|---|" << (include_timings ? "---|" : "") << "\n";
  for (const CheckResult& c : r.checks) {
    os << "| " << c.name << " | " << c.n << " | " << c.field << " | "
       << (c.seed ? std::to_string(*c.seed) : std::string("-")) << " | " << (c.holds ? "holds" : "**fails**")
       << " |";
    if (include_timings) os << " " << static_cast<long long>(c.millis) << " |";
    os << "\n";
  }
  if (!r.rank_tables.empty()) {
    os << "\n## Rank tables\n\n| n | field | seed | complex | note |\n|---|---|---|---|---|\n";
    for (const RankRow& row : r.rank_tables) {
      std::string note = row.exploratory ? "exploratory" : "";
      if (row.resampled) note += note.empty() ? "resampled" : ", resampled";
      os << "| " << row.table.n << " | " << row.field << " | "
         << (row.seed ? std::to_string(*row.seed) : std::string("-")) << " | " << format_rank_table(row.table)
         << " | " << note << " |\n";
    }
  }
  for (const CheckResult& c : r.checks) {
    if (c.holds) continue;
    os << "\n### Failure: " << c.name << " (n=" << c.n << ", " << c.field << ")\n\n```json\n"
       << c.details.dump(2) << "\n```\n";
  }
  return os.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format, bool include_timings) {
  if (format == ReportFormat::Json) return report_to_json(r, include_timings).dump(2) + "\n";
  return markdown(r, include_timings);
}

}  // namespace polycoho
