#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycoho/matrix.hpp"

namespace polycoho {

/// Vertex / simplex label, 1-based: 1..2n+1.
using Label = int;

/// The n of a (2n+1)-gon relation; supported range 2..5.
class PolygonRank {
 public:
  static constexpr int kMin = 2;
  static constexpr int kMax = 5;

  explicit PolygonRank(int n);

  int n() const noexcept { return n_; }
  int label_count() const noexcept { return 2 * n_ + 1; }
  /// N = n(n+1)/2, the dimension of the row space the relation acts on.
  int slot_count() const noexcept { return n_ * (n_ + 1) / 2; }
  int face_count() const noexcept { return n_ * (2 * n_ + 1); }

  friend bool operator==(PolygonRank, PolygonRank) = default;

 private:
  int n_;
};

/// Codimension-1 face shared by simplices a and b; always stored with a < b.
struct Face {
  Label a = 0;
  Label b = 0;

  static Face of(Label x, Label y);

  bool contains(Label x) const noexcept { return a == x || b == x; }
  /// The label of the face other than `p`; p must be one of its labels.
  Label other(Label p) const noexcept { return a == p ? b : a; }
  std::string to_string() const;

  friend auto operator<=>(const Face&, const Face&) = default;
};

/// All n(2n+1) faces in lexicographic order; position = face index.
std::vector<Face> all_faces(PolygonRank rank);
std::size_t face_index(PolygonRank rank, Face f);

/// The 3 x (2n+1) matrix whose 3x3 column minors parametrize the relation.
class ParameterMatrix {
 public:
  /// `entries` must be 3 x (2n+1). Genericity is not enforced here; see
  /// first_vanishing_minor.
  ParameterMatrix(PolygonRank rank, Matrix entries);

  PolygonRank rank() const noexcept { return rank_; }
  Field field() const noexcept { return entries_.field(); }
  const Matrix& entries() const noexcept { return entries_; }
  /// Entry in row 0..2 (alpha, beta, gamma) of column `label`.
  const Scalar& at(int row, Label label) const { return entries_(row, label - 1); }

  /// d_ijk in the given argument order; zero if labels repeat.
  Scalar minor(Label i, Label j, Label k) const;

  friend bool operator==(const ParameterMatrix&, const ParameterMatrix&) = default;

 private:
  PolygonRank rank_;
  Matrix entries_;
};

Scalar minor_det(const ParameterMatrix& m, Label i, Label j, Label k);

/// First (lexicographic) triple i<j<k with d_ijk = 0, if any.
std::optional<std::array<Label, 3>> first_vanishing_minor(const ParameterMatrix& m);

/// Entries drawn from [-bound, bound] by a seeded mt19937_64, redrawn until every
/// minor is nonzero (at most kGenericRetries draws). Throws Error(Genericity).
inline constexpr int kGenericRetries = 1000;
ParameterMatrix sample_generic_parameters(PolygonRank rank, Field field, std::uint64_t seed,
                                          long bound);

/// Faces carried by slot {p, q} (p < q, both odd) through the relation.
struct SlotTimeline {
  Face bottom;
  Face lhs_internal;
  std::optional<Face> rhs_internal;
  Face top;
};

struct Slot {
  Label p = 0;
  Label q = 0;
  SlotTimeline timeline;
};

/// How one slot crosses the simplex-p matrix.
struct Passage {
  std::size_t slot = 0;
  Face input;
  Face output;
};

class SlotScheme {
 public:
  explicit SlotScheme(PolygonRank rank);

  PolygonRank rank() const noexcept { return rank_; }
  /// Lexicographic in (p, q); index = global coordinate.
  const std::vector<Slot>& slots() const noexcept { return slots_; }

  /// I_p: odd labels below p and even labels above p, ascending.
  std::vector<Label> inputs(Label p) const;
  /// O_p: even labels below p and odd labels above p, ascending.
  std::vector<Label> outputs(Label p) const;
  /// The n slots touched by A^(p), in slot order.
  const std::vector<Passage>& passages(Label p) const { return passages_.at(p - 1); }

  /// Odd labels ascending (left-hand side, first factor acts first).
  std::vector<Label> lhs_order() const;
  /// Even labels descending.
  std::vector<Label> rhs_order() const;

 private:
  PolygonRank rank_;
  std::vector<Slot> slots_;
  std::vector<std::vector<Passage>> passages_;
};

SlotScheme slot_scheme(PolygonRank rank);

/// A^(p): rows = input faces {i,p} (i in I_p ascending), columns = output faces
/// {l,p} (l in O_p ascending).
struct TransitionMatrix {
  Label p = 0;
  std::vector<Label> inputs;
  std::vector<Label> outputs;
  Matrix entries;
};

/// Entry (i -> l) = prod_{j in I_p, j != i} d_jlp / d_ijp. Throws Error(Singularity)
/// naming the vanishing d_ijp.
TransitionMatrix transition_matrix(const ParameterMatrix& m, Label p, const SlotScheme& scheme);

/// N x N matrix acting as A^(p) on its slots and as the identity elsewhere.
Matrix embed(const TransitionMatrix& a, const SlotScheme& scheme);

/// Test hook: add one to a single entry of one transition matrix.
struct Perturbation {
  Label p = 1;
  std::size_t row = 0;
  std::size_t col = 0;
};

struct RelationWitness {
  std::size_t row = 0;
  std::size_t col = 0;
  Scalar lhs;
  Scalar rhs;
};

struct RelationVerdict {
  bool holds = false;
  std::optional<RelationWitness> witness;
  Matrix lhs;
  Matrix rhs;
};

/// Compares A^(1) A^(3) ... A^(2n+1) with A^(2n) ... A^(4) A^(2) entrywise.
RelationVerdict verify_polygon_relation(const ParameterMatrix& m,
                                        const std::optional<Perturbation>& perturb = std::nullopt);

}  // namespace polycoho
