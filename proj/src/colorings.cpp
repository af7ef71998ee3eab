#include "polycoho/colorings.hpp"

#include <algorithm>
#include <optional>

#include "polycoho/error.hpp"

namespace polycoho {

Coloring::Coloring(PolygonRank rank, Field field)
    : rank_(rank), field_(field), values_(rank.face_count(), Scalar(field)) {}

Coloring::Coloring(PolygonRank rank, Vector values)
    : rank_(rank), field_(values.empty() ? Field() : values.front().field()), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(rank.face_count())) {
    throw Error(ErrorCode::Dimension, "coloring needs one value per face");
  }
}

Coloring& Coloring::operator+=(const Coloring& o) {
  if (!(rank_ == o.rank_)) throw Error(ErrorCode::Dimension, "coloring rank mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

Coloring operator*(const Scalar& s, Coloring c) {
  for (Scalar& v : c.values_) v *= s;
  return c;
}

SimplexVector simplex_vector(const ParameterMatrix& m, std::span<const Label> generator) {
  const PolygonRank rank = m.rank();
  if (generator.size() != static_cast<std::size_t>(rank.n() - 1)) {
    throw Error(ErrorCode::InvalidArgument,
                "simplex vector generator needs " + std::to_string(rank.n() - 1) + " vertices");
  }
  std::vector<Label> s(generator.begin(), generator.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw Error(ErrorCode::InvalidArgument, "simplex vector generator repeats a vertex");
  }
  for (Label t : s) {
    if (t < 1 || t > rank.label_count()) throw Error(ErrorCode::InvalidArgument, "label out of range");
  }
  Coloring c(rank, m.field());
  const bool odd_generator = (rank.n() - 1) % 2 == 1;
  for (const Face& f : all_faces(rank)) {
    if (std::any_of(s.begin(), s.end(), [&](Label t) { return f.contains(t); })) continue;
    Scalar v = Scalar::one(m.field());
    for (Label t : s) v *= m.minor(t, f.a, f.b);
    if (odd_generator && (f.a + f.b) % 2 == 1) v = -v;
    c.at(f) = v;
  }
  return {std::move(s), std::move(c)};
}

std::vector<SimplexVector> all_simplex_vectors(const ParameterMatrix& m) {
  const int v = m.rank().label_count();
  const int k = m.rank().n() - 1;
  std::vector<SimplexVector> out;
  std::vector<Label> subset(k);
  // Lexicographic k-subsets of 1..v.
  for (int i = 0; i < k; ++i) subset[i] = i + 1;
  while (true) {
    out.push_back(simplex_vector(m, subset));
    int pos = k - 1;
    while (pos >= 0 && subset[pos] == v - k + pos + 1) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
  }
  return out;
}

Vector restrict(const Coloring& c, Label p) {
  Vector out;
  out.reserve(2 * c.rank().n());
  for (Label i = 1; i <= c.rank().label_count(); ++i) {
    if (i != p) out.push_back(c.at(Face::of(i, p)));
  }
  return out;
}

bool PermittedSubspace::contains(const Vector& restricted) const {
  if (restricted.size() != basis.cols()) throw Error(ErrorCode::Dimension, "restricted coloring length");
  Matrix stacked(basis.rows() + 1, basis.cols(), basis.field());
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) stacked(r, c) = basis(r, c);
  for (std::size_t c = 0; c < basis.cols(); ++c) stacked(basis.rows(), c) = restricted[c];
  return rank(stacked) == basis.rows();
}

Vector PermittedSubspace::input_coordinates(const Vector& restricted) const {
  Vector out;
  out.reserve(inputs.size());
  for (Label i : inputs) {
    const auto pos = std::find(companions.begin(), companions.end(), i) - companions.begin();
    out.push_back(restricted.at(pos));
  }
  return out;
}

PermittedSubspace permitted_basis(const ParameterMatrix& m, Label p, const SlotScheme& scheme) {
  const TransitionMatrix a = transition_matrix(m, p, scheme);
  PermittedSubspace ps;
  ps.p = p;
  ps.inputs = a.inputs;
  ps.outputs = a.outputs;
  for (Label i = 1; i <= m.rank().label_count(); ++i)
    if (i != p) ps.companions.push_back(i);
  const std::size_t n = a.inputs.size();
  ps.basis = Matrix(n, ps.companions.size(), m.field());
  auto column_of = [&](Label x) {
    return static_cast<std::size_t>(std::find(ps.companions.begin(), ps.companions.end(), x) -
                                    ps.companions.begin());
  };
  for (std::size_t k = 0; k < n; ++k) {
    ps.basis(k, column_of(a.inputs[k])) = Scalar::one(m.field());
    for (std::size_t c = 0; c < n; ++c) ps.basis(k, column_of(a.outputs[c])) = a.entries(k, c);
  }
  return ps;
}

std::vector<Coloring> global_basis(const ParameterMatrix& m, const SlotScheme& scheme) {
  const PolygonRank rank = m.rank();
  std::vector<TransitionMatrix> mats;
  for (Label p = 1; p <= rank.label_count(); ++p) mats.push_back(transition_matrix(m, p, scheme));

  std::vector<Coloring> basis;
  const auto& slots = scheme.slots();
  for (std::size_t s0 = 0; s0 < slots.size(); ++s0) {
    std::vector<std::optional<Scalar>> value(rank.face_count());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      value[face_index(rank, slots[s].timeline.bottom)] =
          s == s0 ? Scalar::one(m.field()) : Scalar::zero(m.field());
    }
    auto apply = [&](Label p) {
      const TransitionMatrix& a = mats[p - 1];
      for (std::size_t c = 0; c < a.outputs.size(); ++c) {
        Scalar y = Scalar::zero(m.field());
        for (std::size_t r = 0; r < a.inputs.size(); ++r) {
          const auto& x = value[face_index(rank, Face::of(a.inputs[r], p))];
          if (!x) throw Error(ErrorCode::Internal, "propagation reached an unset input face");
          y += *x * a.entries(r, c);
        }
        auto& slot = value[face_index(rank, Face::of(a.outputs[c], p))];
        if (slot && !(*slot == y)) {
          throw Error(ErrorCode::Internal,
                      "both sides disagree on face " + Face::of(a.outputs[c], p).to_string());
        }
        slot = y;
      }
    };
    for (Label p : scheme.lhs_order()) apply(p);
    for (Label p : scheme.rhs_order()) apply(p);
    Vector values;
    values.reserve(value.size());
    for (auto& v : value) {
      if (!v) throw Error(ErrorCode::Internal, "face left uncolored by propagation");
      values.push_back(*v);
    }
    basis.emplace_back(rank, std::move(values));
  }
  return basis;
}

bool is_permitted(const ParameterMatrix& m, const Coloring& c, const SlotScheme& scheme) {
  for (Label p = 1; p <= m.rank().label_count(); ++p) {
    if (!permitted_basis(m, p, scheme).contains(restrict(c, p))) return false;
  }
  return true;
}

bool is_permitted(const ParameterMatrix& m, const Coloring& c) {
  return is_permitted(m, c, SlotScheme(m.rank()));
}

std::array<Scalar, 4> lambda_dependence(const ParameterMatrix& m, Label i, Label j, Label k,
                                        Label l, Label mm) {
  if (m.rank().n() != 3) throw Error(ErrorCode::InvalidArgument, "lambda dependence is heptagon-only");
  const std::array<Label, 5> all{i, j, k, l, mm};
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (all[a] == all[b]) throw Error(ErrorCode::InvalidArgument, "labels must be distinct");

  std::vector<Vector> cols;
  for (Label x : {j, k, l, mm}) {
    const std::array<Label, 2> edge{i, x};
    cols.push_back(simplex_vector(m, edge).coloring.values());
  }
  const Matrix edges = Matrix::from_columns(cols, m.rank().face_count(), m.field());
  const auto kernel = kernel_basis(edges);
  if (kernel.size() != 1) {
    throw Error(ErrorCode::Genericity, "edge dependence space has dimension " +
                                           std::to_string(kernel.size()) + ", expected 1");
  }
  Vector v = kernel.front();
  const auto lead = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
  const Scalar scale = lead->inverse();
  std::array<Scalar, 4> out;
  for (std::size_t t = 0; t < 4; ++t) out[t] = v[t] * scale;
  return out;
}

}  // namespace polycoho
