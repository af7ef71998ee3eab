// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "polycoho/error.hpp"
#include "polycoho/report.hpp"

using namespace polycoho;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) note = what;
    pass = pass && cond;
  }
};

ParameterMatrix generic(int n, std::uint64_t seed, Field f = Field::rationals()) {
  return sample_generic_parameters(PolygonRank(n), f, seed, 10);
}

Matrix column_of(const Vector& v) { return Matrix::from_columns({v}, v.size(), v.front().field()); }

std::string tag(int n, std::uint64_t seed, Field f = Field::rationals()) {
  return "n=" + std::to_string(n) + " seed=" + std::to_string(seed) + " " + f.to_string();
}

Outcome polygon_relations() {
  Outcome o;
  std::size_t cases = 0;
  for (int n = 2; n <= 5; ++n)
    for (Field f : {Field::rationals(), Field::prime(101), Field::prime(1009), Field::prime(7919)})
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        o.require(verify_polygon_relation(generic(n, seed, f)).holds, "relation fails at " + tag(n, seed, f));
        ++cases;
      }
  if (o.pass) o.note = std::to_string(cases) + " relations hold exactly (n=2..5; Q, F_101, F_1009, F_7919; 20 seeds)";
  return o;
}

Outcome check_tables(const std::vector<int>& ns, std::uint64_t seeds) {
  Outcome o;
  std::string summary;
  for (int n : ns) {
    const RankTable want = *expected_rank_table(n);
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
      const ParameterMatrix m = generic(n, seed);
      const RankTable got = complex_ranks(m, SlotScheme(m.rank()));
      o.require(got == want, tag(n, seed) + " gave " + format_rank_table(got));
    }
    if (!summary.empty()) summary += "; ";
    summary += "n=" + std::to_string(n) + ": " + format_rank_table(want);
  }
  if (o.pass) o.note = summary + " (" + std::to_string(seeds) + " seeds each)";
  return o;
}

Outcome four_cocycle() {
  Outcome o;
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ParameterMatrix m = generic(n, seed);
      const Matrix low = coboundary_matrix(m, SlotScheme(m.rank()), CoboundaryLevel::Low);
      const Vector phi = cocycle4_cochain(m).face_coefficients;
      o.require(is_zero_vector(low * phi), "cocycle not closed at " + tag(n, seed));
      o.require(low.cols() - rank(low) == 1, "kernel of low is not 1-dimensional at " + tag(n, seed));
      for (Label p = 1; p <= m.rank().label_count(); ++p) {
        Vector restricted;
        for (Label i = 1; i <= m.rank().label_count(); ++i)
          if (i != p) restricted.push_back(phi[face_index(m.rank(), Face::of(i, p))]);
        const Matrix pair = Matrix::from_rows({cocycle4_coefficients(m, p), restricted}, m.field());
        o.require(rank(pair) == 1, "simplex " + std::to_string(p) + " not proportional to c_ip at " + tag(n, seed));
      }
    }
  if (o.pass) o.note = "kernel(low) = span of the 4-cocycle, dim 1, for n=2..5 (3 seeds each)";
  return o;
}

Outcome five_cocycle() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ParameterMatrix m = generic(3, seed);
    const SlotScheme s(m.rank());
    const FiveCocycle five(m, s);
    std::size_t pairs = 0;
    for (Label i = 1; i <= 7; ++i)
      for (Label j = i + 1; j <= 7; ++j)
        for (Label k = 1; k <= 7; ++k)
          for (Label l = k + 1; l <= 7; ++l) {
            if (std::make_pair(k, l) < std::make_pair(i, j)) continue;
            Scalar sum = Scalar::zero(m.field());
            for (Label p = 1; p <= 7; ++p) {
              const Scalar v = five.product(p, {i, j}, {k, l});
              sum += p % 2 == 0 ? v : -v;
            }
            o.require(sum.is_zero(), "cocycle identity fails at " + tag(3, seed));
            ++pairs;
          }
    o.require(pairs == 231, "expected 231 edge pairs");
    const Matrix low = coboundary_matrix(m, s, CoboundaryLevel::Low);
    const Matrix high = coboundary_matrix(m, s, CoboundaryLevel::High);
    const Vector c = five.cochain().flatten();
    o.require(c.size() == 42, "cochain is not 42-dimensional");
    o.require(is_zero_vector(high * c), "cochain outside kernel(high) at " + tag(3, seed));
    const NontrivialityVerdict v = nontriviality_check(m, s);
    o.require(v.nontrivial && v.witness_distinct, "cocycle classified trivial at " + tag(3, seed));
    const std::size_t kernel_high = high.cols() - rank(high);
    const std::size_t image_low = rank(low);
    const std::size_t joint = rank(low.hconcat(column_of(c)));
    o.require(kernel_high == 21 && image_low == 20 && joint == 21,
              "dimension count " + std::to_string(kernel_high) + " vs " + std::to_string(image_low) + "+1");
  }
  if (o.pass) o.note = "231/231 pairs, closed, nontrivial, kernel(high) 21 = 20 + 1 (5 seeds)";
  return o;
}

Outcome well_definedness() {
  Outcome o;
  std::size_t identities = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ParameterMatrix m = generic(3, seed);
    const FiveCocycle five(m, SlotScheme(m.rank()));
    const auto rep = five.consistency();
    identities += rep.identities;
    o.require(rep.violations == 0, std::to_string(rep.violations) + " consistency violations at " + tag(3, seed));
    for (Label p = 1; p <= 7; ++p) {
      const auto first = five.basis_edges(p);
      const auto second = five.basis_edges(p, first);
      o.require(five.gram(p, first) == five.gram(p, second), "Gram depends on edge choice at " + tag(3, seed));
    }
  }
  if (o.pass) o.note = std::to_string(identities) + " lambda-weighted identities exact; Gram edge-choice independent";
  return o;
}

Outcome dethad_identity() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const Field q = Field::rationals();
  std::size_t tested = 0;
  auto check = [&](const ParameterMatrix& raw) {
    const ParameterMatrix n = normalize_leading_identity(raw);
    Matrix block(3, 3, q);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) block(r, c) = n.entries()(r, 3 + c);
    o.require(det(eta_matrix(n, 7)) == -dethad(block), "det eta_7 != -dethad");
    ++tested;
  };
  // Integer M already of the form (I | B | column 7).
  while (tested < 20) {
    Matrix e = Matrix::identity(3, q).hconcat(Matrix(3, 4, q));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 3; c < 7; ++c) e(r, c) = Scalar(q, static_cast<long>(rng() % 21) - 10);
    const ParameterMatrix m(PolygonRank(3), e);
    if (!first_vanishing_minor(m)) check(m);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) check(generic(3, seed));
  if (o.pass) o.note = std::to_string(tested) + " normalized matrices (20 integer, 20 sampled then normalized)";
  return o;
}

Outcome structural() {
  Outcome o;
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const ParameterMatrix m = generic(n, seed);
      const SlotScheme s(m.rank());
      const Matrix low = coboundary_matrix(m, s, CoboundaryLevel::Low);
      const Matrix high = coboundary_matrix(m, s, CoboundaryLevel::High);
      o.require((high * low).is_zero(), "delta^2 != 0 at " + tag(n, seed));
      const auto vectors = all_simplex_vectors(m);
      std::vector<Vector> rows;
      for (const SimplexVector& v : vectors) rows.push_back(v.coloring.values());
      const auto big = static_cast<std::size_t>(m.rank().slot_count());
      o.require(rank(Matrix::from_rows(rows, m.field())) == big, "simplex-vector span != N at " + tag(n, seed));
      for (Label p = 1; p <= m.rank().label_count(); ++p) {
        const PermittedSubspace sub = permitted_basis(m, p, s);
        std::vector<Vector> restricted;
        for (const SimplexVector& v : vectors) {
          restricted.push_back(restrict(v.coloring, p));
          o.require(sub.contains(restricted.back()), "simplex vector not permitted at " + tag(n, seed));
        }
        const std::size_t span = rank(Matrix::from_rows(restricted, m.field()));
        o.require(span == sub.dimension() && sub.dimension() == static_cast<std::size_t>(n),
                  "graph and span characterizations differ on simplex " + std::to_string(p) + " at " + tag(n, seed));
      }
    }
  if (o.pass) o.note = "delta^2 = 0, span = N, graph = span on every simplex, n=2..5";
  return o;
}

Outcome bockstein(std::string& finding) {
  Outcome o;
  std::size_t evaluations = 0;
  for (std::uint64_t prime : {3ULL, 5ULL})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ParameterMatrix m = generic(3, seed);
      BocksteinOptions opts;
      opts.prime = prime;
      opts.trials = 50;
      opts.seed = seed;
      const BocksteinResult r = bockstein_lift(m, SlotScheme(m.rank()), opts);
      evaluations += r.evaluations;
      std::string where = "p=" + std::to_string(prime) + " " + tag(3, seed);
      if (r.counterexample)
        where += " simplex " + std::to_string(r.counterexample->simplex) + " value " + r.counterexample->value.get_str();
      o.require(r.divisible, "divisibility counterexample at " + where);
      o.require(r.divided_is_cocycle, "divided cochain not a cocycle at " + where);
    }
  // Recorded only: does the p=5, k=1, l=2 divided cochain vanish on the tested points?
  std::size_t nonzero = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ParameterMatrix m = generic(3, seed);
    BocksteinOptions opts;
    opts.prime = 5;
    opts.l = 2;
    opts.seed = seed;
    const BocksteinResult r = bockstein_lift(m, SlotScheme(m.rank()), opts);
    nonzero += r.divided_nonzero ? 1 : 0;
  }
  finding = "p=5 k=1 l=2: divided cochain nonzero on tested points for " + std::to_string(nonzero) + "/3 seeds";
  if (o.pass) o.note = std::to_string(evaluations) + " evaluations divisible (p=3,5; k=l=1; 50 trials x 3 seeds); divided cochains closed";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  const ParameterMatrix m = generic(3, 1);
  const SlotScheme s(m.rank());
  const RelationVerdict tampered = verify_polygon_relation(m, Perturbation{4, 1, 1});
  o.require(!tampered.holds && tampered.witness && !(tampered.witness->lhs == tampered.witness->rhs),
            "perturbed relation not rejected with a witness");

  const Matrix low = coboundary_matrix(m, s, CoboundaryLevel::Low);
  const Matrix high = coboundary_matrix(m, s, CoboundaryLevel::High);
  std::mt19937_64 rng(99);
  auto random_vector = [&](std::size_t len) {
    Vector v;
    for (std::size_t k = 0; k < len; ++k) v.emplace_back(m.field(), static_cast<long>(rng() % 11) - 5);
    return v;
  };
  for (int t = 0; t < 10; ++t) o.require(!is_zero_vector(high * random_vector(42)), "random 5-cochain accepted");
  for (int t = 0; t < 10; ++t) {
    const Vector b = low * random_vector(21);
    const NontrivialityVerdict v = classify_cochain(low, b);
    o.require(!v.nontrivial && v.preimage && low * *v.preimage == b, "coboundary not classified trivial");
  }
  if (o.pass) o.note = "tampered relation has witness; 10 random cochains rejected; 10 coboundaries trivial";
  return o;
}

}  // namespace

int main() {
  std::string finding;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"polygon relations", polygon_relations},
      {"heptagon rank table", [] { return check_tables({3}, 10); }},
      {"pentagon/enneagon/hendecagon rank tables", [] { return check_tables({2, 4, 5}, 10); }},
      {"4-cocycle spans kernel(low)", four_cocycle},
      {"5-cocycle", five_cocycle},
      {"well-definedness", well_definedness},
      {"dethad identity", dethad_identity},
      {"structural invariants", structural},
      {"characteristic-p lift", [&] { return bockstein(finding); }},
      {"negative controls", negative_controls},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s: %s (%s) [%.1fs]\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.note.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  if (!finding.empty()) std::printf("note: %s\n", finding.c_str());
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
