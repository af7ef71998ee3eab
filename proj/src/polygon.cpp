#include "polycoho/polygon.hpp"

#include <algorithm>
#include <random>

#include "polycoho/error.hpp"

namespace polycoho {

PolygonRank::PolygonRank(int n) : n_(n) {
  if (n < kMin || n > kMax) {
    throw Error(ErrorCode::InvalidArgument,
                "polygon rank n=" + std::to_string(n) + " outside supported range 2..5");
  }
}

Face Face::of(Label x, Label y) {
  if (x == y) throw Error(ErrorCode::InvalidArgument, "face needs two distinct labels");
  return x < y ? Face{x, y} : Face{y, x};
}

std::string Face::to_string() const { return std::to_string(a) + "," + std::to_string(b); }

std::vector<Face> all_faces(PolygonRank rank) {
  std::vector<Face> faces;
  faces.reserve(rank.face_count());
  for (Label a = 1; a <= rank.label_count(); ++a)
    for (Label b = a + 1; b <= rank.label_count(); ++b) faces.push_back({a, b});
  return faces;
}

std::size_t face_index(PolygonRank rank, Face f) {
  const int v = rank.label_count();
  if (f.a < 1 || f.b > v || f.a >= f.b) {
    throw Error(ErrorCode::InvalidArgument, "face " + f.to_string() + " out of range");
  }
  // Faces with first label < a precede; row a-1 holds (v - a) faces.
  const int before = (f.a - 1) * v - (f.a - 1) * f.a / 2;
  return static_cast<std::size_t>(before + (f.b - f.a - 1));
}

ParameterMatrix::ParameterMatrix(PolygonRank rank, Matrix entries)
    : rank_(rank), entries_(std::move(entries)) {
  if (entries_.rows() != 3 || entries_.cols() != static_cast<std::size_t>(rank.label_count())) {
    throw Error(ErrorCode::Dimension, "parameter matrix must be 3 x " +
                                          std::to_string(rank.label_count()));
  }
}

Scalar ParameterMatrix::minor(Label i, Label j, Label k) const {
  const int v = rank_.label_count();
  for (Label x : {i, j, k}) {
    if (x < 1 || x > v) throw Error(ErrorCode::InvalidArgument, "label out of range");
  }
  if (i == j || j == k || i == k) return Scalar::zero(field());
  const auto& a = [&](int r, Label c) -> const Scalar& { return at(r, c); };
  return a(0, i) * (a(1, j) * a(2, k) - a(2, j) * a(1, k)) -
         a(0, j) * (a(1, i) * a(2, k) - a(2, i) * a(1, k)) +
         a(0, k) * (a(1, i) * a(2, j) - a(2, i) * a(1, j));
}

Scalar minor_det(const ParameterMatrix& m, Label i, Label j, Label k) { return m.minor(i, j, k); }

std::optional<std::array<Label, 3>> first_vanishing_minor(const ParameterMatrix& m) {
  const int v = m.rank().label_count();
  for (Label i = 1; i <= v; ++i)
    for (Label j = i + 1; j <= v; ++j)
      for (Label k = j + 1; k <= v; ++k)
        if (m.minor(i, j, k).is_zero()) return std::array<Label, 3>{i, j, k};
  return std::nullopt;
}

ParameterMatrix sample_generic_parameters(PolygonRank rank, Field field, std::uint64_t seed,
                                          long bound) {
  if (bound < 2) throw Error(ErrorCode::InvalidArgument, "bound must be >= 2");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  std::array<Label, 3> last{};
  for (int attempt = 0; attempt < kGenericRetries; ++attempt) {
    Matrix e(3, rank.label_count(), field);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < e.cols(); ++c)
        e(r, c) = Scalar(field, static_cast<long>(rng() % span) - bound);
    ParameterMatrix m(rank, std::move(e));
    auto vanishing = first_vanishing_minor(m);
    if (!vanishing) return m;
    last = *vanishing;
  }
  throw Error(ErrorCode::Genericity,
              "no generic parameter matrix after " + std::to_string(kGenericRetries) +
                  " draws over " + field.to_string() + "; last vanishing minor d_" +
                  std::to_string(last[0]) + std::to_string(last[1]) + std::to_string(last[2]));
}

namespace {

// Simplex whose matrix moves a slot from face `from` to face `to`.
Label common_label(Face from, Face to) {
  if (from.a == to.a || from.a == to.b) return from.a;
  return from.b;
}

}  // namespace

SlotScheme::SlotScheme(PolygonRank rank) : rank_(rank), passages_(rank.label_count()) {
  const int v = rank.label_count();
  for (Label p = 1; p <= v; p += 2) {
    for (Label q = p + 2; q <= v; q += 2) {
      SlotTimeline t{Face::of(p, q - 1), Face::of(p, q), std::nullopt, Face::of(p + 1, q)};
      if (q > p + 2) t.rhs_internal = Face::of(p + 1, q - 1);
      slots_.push_back({p, q, t});
    }
  }
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const SlotTimeline& t = slots_[s].timeline;
    std::vector<Face> lhs{t.bottom, t.lhs_internal, t.top};
    std::vector<Face> rhs{t.bottom};
    if (t.rhs_internal) rhs.push_back(*t.rhs_internal);
    rhs.push_back(t.top);
    for (const auto* path : {&lhs, &rhs}) {
      for (std::size_t k = 0; k + 1 < path->size(); ++k) {
        const Face from = (*path)[k];
        const Face to = (*path)[k + 1];
        passages_[common_label(from, to) - 1].push_back({s, from, to});
      }
    }
  }
  for (Label p = 1; p <= v; ++p) {
    if (passages_[p - 1].size() != static_cast<std::size_t>(rank.n())) {
      throw Error(ErrorCode::Internal, "slot scheme: simplex " + std::to_string(p) +
                                           " touches wrong number of slots");
    }
  }
}

std::vector<Label> SlotScheme::inputs(Label p) const {
  std::vector<Label> out;
  for (Label i = 1; i <= rank_.label_count(); ++i) {
    if ((i < p && i % 2 == 1) || (i > p && i % 2 == 0)) out.push_back(i);
  }
  return out;
}

std::vector<Label> SlotScheme::outputs(Label p) const {
  std::vector<Label> out;
  for (Label i = 1; i <= rank_.label_count(); ++i) {
    if ((i < p && i % 2 == 0) || (i > p && i % 2 == 1)) out.push_back(i);
  }
  return out;
}

std::vector<Label> SlotScheme::lhs_order() const {
  std::vector<Label> out;
  for (Label p = 1; p <= rank_.label_count(); p += 2) out.push_back(p);
  return out;
}

std::vector<Label> SlotScheme::rhs_order() const {
  std::vector<Label> out;
  for (Label p = 2 * rank_.n(); p >= 2; p -= 2) out.push_back(p);
  return out;
}

SlotScheme slot_scheme(PolygonRank rank) { return SlotScheme(rank); }

TransitionMatrix transition_matrix(const ParameterMatrix& m, Label p, const SlotScheme& scheme) {
  if (p < 1 || p > m.rank().label_count()) {
    throw Error(ErrorCode::InvalidArgument, "simplex label out of range");
  }
  TransitionMatrix a{p, scheme.inputs(p), scheme.outputs(p), Matrix()};
  const std::size_t n = a.inputs.size();
  a.entries = Matrix(n, n, m.field());
  for (std::size_t r = 0; r < n; ++r) {
    const Label i = a.inputs[r];
    for (std::size_t c = 0; c < n; ++c) {
      const Label l = a.outputs[c];
      Scalar num = Scalar::one(m.field());
      Scalar den = Scalar::one(m.field());
      for (Label j : a.inputs) {
        if (j == i) continue;
        const Scalar dijp = m.minor(i, j, p);
        if (dijp.is_zero()) {
          throw Error(ErrorCode::Singularity, "vanishing denominator d_" + std::to_string(i) +
                                                  std::to_string(j) + std::to_string(p));
        }
        num *= m.minor(j, l, p);
        den *= dijp;
      }
      a.entries(r, c) = num / den;
    }
  }
  return a;
}

Matrix embed(const TransitionMatrix& a, const SlotScheme& scheme) {
  const std::size_t size = scheme.slots().size();
  Matrix e = Matrix::identity(size, a.entries.field());
  const auto& passages = scheme.passages(a.p);
  auto index_of = [](const std::vector<Label>& v, Label x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
  };
  for (const Passage& in : passages) e(in.slot, in.slot) = Scalar::zero(a.entries.field());
  for (const Passage& in : passages) {
    const std::size_t r = index_of(a.inputs, in.input.other(a.p));
    for (const Passage& out : passages) {
      const std::size_t c = index_of(a.outputs, out.output.other(a.p));
      e(in.slot, out.slot) = a.entries(r, c);
    }
  }
  return e;
}

RelationVerdict verify_polygon_relation(const ParameterMatrix& m,
                                        const std::optional<Perturbation>& perturb) {
  const SlotScheme scheme(m.rank());
  const std::size_t size = scheme.slots().size();
  if (perturb && (perturb->p < 1 || perturb->p > m.rank().label_count()))
    throw Error(ErrorCode::InvalidArgument, "perturbation names no simplex");
  auto factor = [&](Label p) {
    TransitionMatrix a = transition_matrix(m, p, scheme);
    if (perturb && perturb->p == p) {
      if (perturb->row >= a.entries.rows() || perturb->col >= a.entries.cols()) {
        throw Error(ErrorCode::InvalidArgument, "perturbation outside transition matrix");
      }
      a.entries(perturb->row, perturb->col) += Scalar::one(m.field());
    }
    return embed(a, scheme);
  };
  RelationVerdict v;
  v.lhs = Matrix::identity(size, m.field());
  v.rhs = Matrix::identity(size, m.field());
  for (Label p : scheme.lhs_order()) v.lhs = v.lhs * factor(p);
  for (Label p : scheme.rhs_order()) v.rhs = v.rhs * factor(p);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      if (!(v.lhs(r, c) == v.rhs(r, c))) {
        v.witness = RelationWitness{r, c, v.lhs(r, c), v.rhs(r, c)};
        return v;
      }
    }
  }
  v.holds = true;
  return v;
}

}  // namespace polycoho
