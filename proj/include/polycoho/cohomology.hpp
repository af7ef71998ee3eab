#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polycoho/colorings.hpp"

namespace polycoho {

/// Which term of C^{2n-2} -> C^{2n-1} -> C^{2n} a quadratic cochain lives in.
enum class CochainLevel { Face, Simplex, Global };

/// Quadratic cochains on the boundary of the 2n-simplex, stored as
///   Face:    one coefficient c_u per face (the form c_u x_u^2);
///   Simplex: a symmetric n x n Gram matrix per simplex, in I_p coordinates;
///   Global:  one symmetric N x N Gram matrix in bottom-face coordinates.
struct QuadraticCochain {
  PolygonRank rank;
  CochainLevel level = CochainLevel::Face;
  Vector face_coefficients;
  std::vector<Matrix> simplex_forms;  // index p - 1
  Matrix global_form;

  /// 2n-2, 2n-1 or 2n.
  int degree() const noexcept;
  /// Coordinates used by coboundary_matrix: face order, or for forms the
  /// polynomial coefficients q_st (s <= t, row-major), simplices ascending.
  Vector flatten() const;
  static QuadraticCochain from_flat(PolygonRank rank, CochainLevel level, const Vector& flat);
};

struct RankTable {
  int n = 0;
  std::array<std::size_t, 3> dims{};
  std::size_t rank_low = 0;
  std::size_t rank_high = 0;
  std::size_t middle_cohomology_dim = 0;

  friend bool operator==(const RankTable&, const RankTable&) = default;
};

/// Alternating sign on {1..2n+1} \ {p}, starting with +1. Throws for i == p.
int epsilon_sign(PolygonRank rank, Label p, Label i);

/// c_{ip} for every i != p (ascending i): the product of d_{a b p} over pairs
/// a < b of labels other than i and p.
Vector cocycle4_coefficients(const ParameterMatrix& m, Label p);

/// Face-level 4-cocycle: (-1)^(a+b+1) / prod_{t != a,b} d_{a t b} on face {a,b}.
/// Restricted to the faces of simplex p it is a nonzero multiple of
/// cocycle4_coefficients(m, p); c_{ip} itself is not symmetric in i and p.
QuadraticCochain cocycle4_cochain(const ParameterMatrix& m);

/// sum_{i != p} eps_i^(p) c_{ip} x_{ip} y_{ip}, with c_{ip} from cocycle4_coefficients.
Scalar scalar_product_4(const ParameterMatrix& m, Label p, const Coloring& x, const Coloring& y);

enum class CoboundaryLevel { Low, High };

/// Low: dim C^{2n-1} x dim C^{2n-2}; High: dim C^{2n} x dim C^{2n-1}.
/// Both act on flattened cochains by left multiplication.
Matrix coboundary_matrix(const ParameterMatrix& m, const SlotScheme& scheme, CoboundaryLevel level);

RankTable complex_ranks(const ParameterMatrix& m, const SlotScheme& scheme);

/// Global-coordinate to simplex-p input-coordinate restriction map (N x n).
Matrix restriction_map(const std::vector<Coloring>& global, const SlotScheme& scheme, Label p);

// ---- heptagon degree-5 cocycle --------------------------------------------

/// Unordered vertex pair of a simplex (distinct from a Face, which is named by
/// the two vertices it omits).
struct Edge {
  Label i = 0;
  Label j = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// 6 x 6: rows alpha^2, beta^2, gamma^2, alpha beta, alpha gamma, beta gamma at the
/// columns != p in increasing order. Heptagon only.
Matrix eta_matrix(const ParameterMatrix& m, Label p);

/// det(eta_p) (d_ikp d_jlp + d_ilp d_jkp) for edges {i,j}, {k,l}.
Scalar scalar_product_5(const ParameterMatrix& m, Label p, Edge e1, Edge e2);

/// Caches det(eta_p) so repeated products are cheap.
class FiveCocycle {
 public:
  FiveCocycle(const ParameterMatrix& m, const SlotScheme& scheme);

  Scalar product(Label p, Edge e1, Edge e2) const;
  const Scalar& eta_det(Label p) const { return eta_det_.at(p - 1); }

  /// Edges of simplex p in lexicographic order.
  std::vector<Edge> edges_of(Label p) const;
  /// First three edges (lexicographic, greedy, skipping `exclude`) whose
  /// restrictions are independent. Throws Error(Genericity) if none exist.
  std::array<Edge, 3> basis_edges(Label p, std::span<const Edge> exclude = {}) const;
  /// Gram matrix in I_p coordinates built from the given edge triple. Throws
  /// Error(Genericity) if the restrictions are dependent.
  Matrix gram(Label p, const std::array<Edge, 3>& edges) const;
  Matrix gram(Label p) const { return gram(p, basis_edges(p)); }
  /// Simplex-level cochain made of all seven Gram matrices.
  QuadraticCochain cochain() const;

  /// Restriction of e_ij to simplex p in I_p coordinates.
  Vector restricted_edge(Label p, Edge e) const;

  struct ConsistencyReport {
    std::size_t identities = 0;
    std::size_t violations = 0;
  };
  /// For every simplex p, vertex i and triple {j1,j2,j3} of the remaining labels,
  /// take the three-term dependence of e_{i j_a}|_p (lambdas from the four-edge
  /// dependence with m = p) and test sum_a lambda_a <e_{i j_a}, e_kl>_5 = 0 for
  /// every edge kl of simplex p.
  ConsistencyReport consistency() const;

 private:
  ParameterMatrix params_;
  SlotScheme scheme_;
  std::vector<Scalar> eta_det_;
  std::vector<PermittedSubspace> permitted_;
};

Matrix cocycle5_gram(const ParameterMatrix& m, const SlotScheme& scheme, Label p);

struct NontrivialityVerdict {
  bool nontrivial = false;
  /// Some 4-cochain whose coboundary is the tested cochain (trivial case only).
  std::optional<Vector> preimage;
  /// Heptagon witness: <e12,e34>, <e13,e24>, <e14,e23> on simplex 7.
  std::array<Scalar, 3> witness_products;
  bool witness_distinct = false;
};

/// Classifies a flattened simplex-level cochain by rank([low | c]) vs rank(low).
NontrivialityVerdict classify_cochain(const Matrix& low, const Vector& cochain);

/// Runs classify_cochain on the degree-5 heptagon cocycle and attaches the witness.
NontrivialityVerdict nontriviality_check(const ParameterMatrix& m, const SlotScheme& scheme);

/// -(a4b4 a5c5 b6c6 - a4c4 a5b5 b6c6 - a4b4 b5c5 a6c6 + b4c4 a5b5 a6c6
///   + a4c4 b5c5 a6b6 - b4c4 a5c5 a6b6), rows (a,b,c), columns (4,5,6) of B.
Scalar dethad(const Matrix& b);

/// Row-reduces m so its first three columns form the identity. Throws
/// Error(Singularity) when d_123 = 0.
ParameterMatrix normalize_leading_identity(const ParameterMatrix& m);

// ---- characteristic-p lift -------------------------------------------------

struct BocksteinOptions {
  std::uint64_t prime = 3;
  unsigned k = 1;
  unsigned l = 1;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  /// Random integer coefficients in [-bound, bound] on the simplex vectors.
  long coefficient_bound = 3;
};

/// The divided cochain (delta c_pow) / prime, reduced mod prime, on one simplex.
class DividedCochain {
 public:
  DividedCochain(const ParameterMatrix& m, BocksteinOptions opts);

  /// Integer value of delta(c x^{p^k} y^{p^l}) on simplex p (before division).
  mpz_class powered_coboundary(Label p, const Coloring& x, const Coloring& y) const;
  /// Residue in [0, prime); throws Error(InvalidArgument) if not divisible.
  std::uint64_t evaluate(Label p, const Coloring& x, const Coloring& y) const;
  /// sum_p (-1)^(p-1) evaluate(p, x|_p, y|_p) mod prime.
  std::uint64_t coboundary(const Coloring& x, const Coloring& y) const;

 private:
  ParameterMatrix params_;
  BocksteinOptions opts_;
  std::vector<mpz_class> coeff_;  // by face index
  unsigned long x_power_ = 0;
  unsigned long y_power_ = 0;
};

struct BocksteinCounterexample {
  std::size_t trial = 0;
  Label simplex = 0;
  Coloring x;
  Coloring y;
  mpz_class value;
};

struct BocksteinResult {
  bool divisible = false;
  bool divided_is_cocycle = false;
  /// Whether some divided value was nonzero mod prime.
  bool divided_nonzero = false;
  std::size_t evaluations = 0;
  std::optional<BocksteinCounterexample> counterexample;
  std::optional<DividedCochain> cochain;
};

/// Requires integer entries in m.
BocksteinResult bockstein_lift(const ParameterMatrix& m, const SlotScheme& scheme,
                               const BocksteinOptions& opts);

}  // namespace polycoho
