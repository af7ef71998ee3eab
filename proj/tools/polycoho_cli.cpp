#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polycoho/polycoho.h"

namespace {

struct Options {
  std::vector<int> ns;
  std::vector<std::string> fields;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> trials;
  std::optional<long> bound;
  std::string out;
  std::string format = "json";
  std::string params;
  std::string config;
  std::vector<std::string> checks;
  std::optional<std::uint64_t> prime;
  std::optional<unsigned> k;
  std::optional<unsigned> l;
  std::string tamper;
  std::size_t workers = 0;
  bool timings = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json build_config(const Options& o, const std::vector<std::string>& verb_checks) {
  nlohmann::json cfg = o.config.empty() ? nlohmann::json::object() : nlohmann::json::parse(read_file(o.config));
  if (!o.ns.empty()) cfg["ns"] = o.ns;
  if (!o.fields.empty()) cfg["fields"] = o.fields;
  if (!o.seeds.empty()) cfg["seeds"] = o.seeds;
  if (o.trials) cfg["trials"] = *o.trials;
  if (o.bound) cfg["bound"] = *o.bound;
  if (!verb_checks.empty()) cfg["checks"] = verb_checks;
  if (!o.checks.empty()) cfg["checks"] = o.checks;
  if (o.prime) cfg["bockstein"]["prime"] = *o.prime;
  if (o.k) cfg["bockstein"]["k"] = *o.k;
  if (o.l) cfg["bockstein"]["l"] = *o.l;
  if (!o.tamper.empty()) {
    int p = 0;
    std::size_t row = 0, col = 0;
    if (std::sscanf(o.tamper.c_str(), "%d,%zu,%zu", &p, &row, &col) != 3)
      throw std::runtime_error("--tamper expects p,row,col");
    cfg["tamper"] = {{"p", p}, {"row", row}, {"col", col}};
  }
  if (!o.params.empty()) cfg["params"] = nlohmann::json::parse(read_file(o.params));
  if (o.workers) cfg["workers"] = o.workers;
  return cfg;
}

int run(const Options& o, const std::vector<std::string>& verb_checks) {
  nlohmann::json cfg;
  try {
    cfg = build_config(o, verb_checks);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  pc_report* report = nullptr;
  if (pc_run_suite(cfg.dump().c_str(), &report) != PC_OK) {
    std::cerr << "error: " << pc_last_error() << "\n";
    return 2;
  }
  char* text = nullptr;
  if (pc_report_emit(report, o.format.c_str(), o.timings ? 1 : 0, &text) != PC_OK) {
    std::cerr << "error: " << pc_last_error() << "\n";
    pc_report_free(report);
    return 2;
  }
  const int passed = pc_report_passed(report);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    f << text;
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      pc_string_free(text);
      pc_report_free(report);
      return 2;
    }
    std::cerr << (passed ? "all checks hold" : "some checks fail") << ", report written to " << o.out << "\n";
  }
  pc_string_free(text);
  pc_report_free(report);
  return passed ? 0 : 1;
}

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.ns, "Polygon rank n (2n+1 labels), repeatable")->check(CLI::Range(2, 5));
  cmd->add_option("--field", o.fields, "Q or Fq:<q>, repeatable");
  cmd->add_option("--seed", o.seeds, "Sampling seed, repeatable");
  cmd->add_option("--trials", o.trials, "Random trials per randomized check (default 50)");
  cmd->add_option("--bound", o.bound, "Entries of M drawn from [-bound, bound] (default 10)");
  cmd->add_option("--out", o.out, "Write the report here instead of stdout");
  cmd->add_option("--format", o.format, "json or markdown")->check(CLI::IsMember({"json", "markdown", "md"}));
  cmd->add_option("--params", o.params, "JSON file with an explicit parameter matrix")->check(CLI::ExistingFile);
  cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
  cmd->add_flag("--timings", o.timings, "Include per-check timings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for polygon relations and their quadratic cohomology"};
  app.set_version_flag("--version", pc_version());
  app.require_subcommand(1);

  Options o;
  struct Verb {
    const char* name;
    const char* help;
    std::vector<std::string> checks;
  };
  const std::vector<Verb> verbs{
      {"verify-relation", "Check the polygon relation entrywise", {"relation"}},
      {"ranks", "Rank table of the quadratic cochain complex", {"ranks"}},
      {"cocycle4", "Degree 2n-2 cocycle checks", {"cocycle4"}},
      {"cocycle5", "Heptagon degree-5 cocycle checks", {"cocycle5"}},
      {"dethad", "det(eta_7) against dethad", {"dethad"}},
      {"bockstein", "Divisibility of the powered coboundary", {"bockstein"}},
      {"suite", "Run several checks (all by default)", {}},
  };
  std::vector<std::pair<CLI::App*, const Verb*>> commands;
  for (const Verb& v : verbs) {
    CLI::App* cmd = app.add_subcommand(v.name, v.help);
    common_flags(cmd, o);
    const std::string name = v.name;
    if (name == "verify-relation")
      cmd->add_option("--tamper", o.tamper, "Debug: add 1 to entry row,col of A^(p), given as p,row,col");
    if (name == "bockstein" || name == "suite") {
      cmd->add_option("--prime", o.prime, "Odd prime p (default 3)");
      cmd->add_option("-k", o.k, "Power p^k on x");
      cmd->add_option("-l", o.l, "Power p^l on y");
    }
    if (name == "suite") {
      cmd->add_option("--config", o.config, "Suite configuration JSON")->check(CLI::ExistingFile);
      cmd->add_option("--check", o.checks, "Restrict to these checks, repeatable")
          ->check(CLI::IsMember({"relation", "cocycle4", "ranks", "cocycle5", "dethad", "bockstein"}));
    }
    commands.emplace_back(cmd, &v);
  }

  CLI11_PARSE(app, argc, argv);
  for (const auto& [cmd, verb] : commands)
    if (cmd->parsed()) return run(o, verb->checks);
  return 2;
}
