#pragma once

#include <array>
#include <span>
#include <vector>

#include "polycoho/polygon.hpp"

namespace polycoho {

/// Field value on every face, indexed by face_index.
class Coloring {
 public:
  Coloring(PolygonRank rank, Field field);
  Coloring(PolygonRank rank, Vector values);

  PolygonRank rank() const noexcept { return rank_; }
  Field field() const noexcept { return field_; }
  const Vector& values() const noexcept { return values_; }

  const Scalar& at(Face f) const { return values_[face_index(rank_, f)]; }
  Scalar& at(Face f) { return values_[face_index(rank_, f)]; }

  Coloring& operator+=(const Coloring& o);
  friend Coloring operator*(const Scalar& s, Coloring c);
  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  PolygonRank rank_;
  Field field_;
  Vector values_;
};

/// Generator S is a set of n-1 vertices; for the heptagon it is an edge.
struct SimplexVector {
  std::vector<Label> generator;
  Coloring coloring;
};

/// Component on face {l,m} (l < m) disjoint from S:
///   (-1)^((n-1)(l+m)) * prod_{t in S} d_tlm, and zero when S meets {l,m}.
/// For the heptagon the sign is +1, i.e. e_ij|_lm = d_ilm d_jlm.
SimplexVector simplex_vector(const ParameterMatrix& m, std::span<const Label> generator);

/// One simplex vector per (n-1)-subset of labels, subsets in lexicographic order.
std::vector<SimplexVector> all_simplex_vectors(const ParameterMatrix& m);

/// Values on faces {i,p}, i != p, ascending i.
Vector restrict(const Coloring& c, Label p);

/// Permitted colorings of simplex p in restricted (2n-component) coordinates.
struct PermittedSubspace {
  Label p = 0;
  std::vector<Label> companions;  // ascending, the 2n labels != p
  std::vector<Label> inputs;
  std::vector<Label> outputs;
  /// n x 2n, row k = unit vector on input k followed by row k of A^(p) on outputs.
  Matrix basis;

  std::size_t dimension() const noexcept { return basis.rows(); }
  /// Rank-based membership test.
  bool contains(const Vector& restricted) const;
  /// Restricted coloring projected onto the input faces (its coordinates in `basis`).
  Vector input_coordinates(const Vector& restricted) const;
};

PermittedSubspace permitted_basis(const ParameterMatrix& m, Label p, const SlotScheme& scheme);

/// Basis of permitted colorings of the whole move: element s has bottom face of slot s
/// set to 1, the other bottom faces 0, and everything else propagated through both
/// sides. Throws Error(Internal) if the two sides disagree on a shared face.
std::vector<Coloring> global_basis(const ParameterMatrix& m, const SlotScheme& scheme);

bool is_permitted(const ParameterMatrix& m, const Coloring& c, const SlotScheme& scheme);
bool is_permitted(const ParameterMatrix& m, const Coloring& c);

/// Heptagon only: the (unique up to scale) coefficients with
/// l1 e_ij + l2 e_ik + l3 e_il + l4 e_im = 0, first nonzero coefficient scaled to 1.
std::array<Scalar, 4> lambda_dependence(const ParameterMatrix& m, Label i, Label j, Label k,
                                        Label l, Label mm);

}  // namespace polycoho
