#include "polycoho/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "polycoho/error.hpp"

namespace polycoho {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar(field)) {}

Matrix Matrix::identity(std::size_t size, Field field) {
  Matrix m(size, size, field);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, Field field) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::Dimension, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) throw Error(ErrorCode::FieldMismatch, "row entry field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows, Field field) {
  Matrix m(rows, cols.size(), field);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::Dimension, "ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (!((*this)(r, c) == (*this)(c, r))) return false;
  return true;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  if (rows_ != other.rows_) throw Error(ErrorCode::Dimension, "hconcat row mismatch");
  if (!(field_ == other.field_)) throw Error(ErrorCode::FieldMismatch, "hconcat field mismatch");
  Matrix m(rows_, cols_ + other.cols_, field_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::Dimension, "matrix product shape mismatch");
  if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "matrix product field mismatch");
  Matrix m(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::Dimension, "matrix-vector shape mismatch");
  Vector out(a.rows_, Scalar(a.field_));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!v[k].is_zero() && !a(i, k).is_zero()) out[i] += a(i, k) * v[k];
  return out;
}

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

namespace {

using IntGrid = std::vector<std::vector<mpz_class>>;

// Rows scaled by the lcm of their denominators. `scale` collects the product
// of the multipliers so determinants can be recovered.
IntGrid integer_rows(const Matrix& m, mpz_class* scale) {
  IntGrid g(m.rows(), std::vector<mpz_class>(m.cols()));
  if (scale) *scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (const Scalar& s : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.value().get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& v = m(r, c).value();
      g[r][c] = v.get_num() * (l / v.get_den());
    }
    if (scale) *scale *= l;
  }
  return g;
}

struct BareissResult {
  std::size_t rank = 0;
  bool swapped_odd = false;
  mpz_class last_pivot = 1;
};

// Fraction-free elimination in place; every intermediate entry is a minor of
// the input, so the division by the previous pivot is exact.
BareissResult bareiss(IntGrid& a, std::size_t cols) {
  BareissResult res;
  const std::size_t rows = a.size();
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t c = 0; c < cols && res.rank < rows; ++c) {
    std::size_t p = res.rank;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    if (p != res.rank) {
      std::swap(a[p], a[res.rank]);
      res.swapped_odd = !res.swapped_odd;
    }
    const auto& piv_row = a[res.rank];
    const mpz_class& piv = piv_row[c];
    for (std::size_t i = res.rank + 1; i < rows; ++i) {
      auto& row = a[i];
      const mpz_class lead = row[c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // row[j] = (piv * row[j] - lead * piv_row[j]) / prev
        row[j] *= piv;
        if (sgn(lead) != 0 && sgn(piv_row[j]) != 0) {
          t = lead * piv_row[j];
          row[j] -= t;
        }
        if (prev != 1) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = piv;
    res.last_pivot = piv;
    ++res.rank;
  }
  return res;
}

using ModGrid = std::vector<std::vector<std::uint64_t>>;

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1;
  b %= q;
  while (e) {
    if (e & 1U) r = r * b % q;
    b = b * b % q;
    e >>= 1U;
  }
  return r;
}

ModGrid residues(const Matrix& m) {
  ModGrid g(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m(r, c).value().get_num().get_ui();
  return g;
}

struct ModResult {
  std::size_t rank = 0;
  std::uint64_t det = 1;
};

// Moduli stay below 2^31, so products fit in 64 bits.
ModResult mod_eliminate(ModGrid& a, std::size_t cols, std::uint64_t q) {
  ModResult res;
  const std::size_t rows = a.size();
  for (std::size_t c = 0; c < cols && res.rank < rows; ++c) {
    std::size_t p = res.rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      res.det = 0;
      continue;
    }
    if (p != res.rank) {
      std::swap(a[p], a[res.rank]);
      res.det = (q - res.det) % q;
    }
    const std::uint64_t piv = a[res.rank][c];
    res.det = res.det * piv % q;
    const std::uint64_t inv = mod_pow(piv, q - 2, q);
    for (std::size_t i = res.rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c] * inv % q;
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] = (a[i][j] + (q - f) * a[res.rank][j]) % q;
      }
    }
    ++res.rank;
  }
  return res;
}

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan to reduced row echelon form; first nonzero pivot per column.
Echelon rref(Matrix a) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(a);
  return e;
}

}  // namespace

Scalar det(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::Dimension, "det of non-square matrix");
  const Field f = m.field();
  if (m.rows() == 0) return Scalar::one(f);
  if (f.is_rational()) {
    mpz_class scale;
    IntGrid g = integer_rows(m, &scale);
    BareissResult res = bareiss(g, m.cols());
    if (res.rank < m.rows()) return Scalar::zero(f);
    mpq_class d(res.last_pivot, scale);
    d.canonicalize();
    if (res.swapped_odd) d = -d;
    return Scalar(f, d);
  }
  ModGrid g = residues(m);
  ModResult res = mod_eliminate(g, m.cols(), f.modulus());
  if (res.rank < m.rows()) return Scalar::zero(f);
  return Scalar(f, static_cast<long>(res.det));
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const Field f = m.field();
  if (f.is_rational()) {
    // Eliminate along the shorter dimension.
    IntGrid g = m.rows() <= m.cols() ? integer_rows(m, nullptr) : integer_rows(m.transpose(), nullptr);
    const std::size_t cols = g.front().size();
    return bareiss(g, cols).rank;
  }
  ModGrid g = residues(m);
  return mod_eliminate(g, m.cols(), f.modulus()).rank;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Field f = m.field();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar(f));
    v[free] = Scalar::one(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::Dimension, "solve: rhs length");
  Matrix aug(m.rows(), 1, m.field());
  for (std::size_t r = 0; r < m.rows(); ++r) aug(r, 0) = b[r];
  Echelon e = rref(m.hconcat(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), Scalar(m.field()));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::Dimension, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Echelon e = rref(m.hconcat(Matrix::identity(n, m.field())));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::Singularity, "matrix is singular");
  }
  Matrix inv(n, n, m.field());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

}  // namespace polycoho
