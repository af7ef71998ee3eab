// Independent reference computations for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polycoho/cohomology.hpp"

namespace oracle {

using polycoho::Field;
using polycoho::Matrix;
using polycoho::Scalar;

// Laplace expansion along the first row.
inline Scalar det_cofactor(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Scalar::one(m.field());
  if (n == 1) return m(0, 0);
  Scalar sum = Scalar::zero(m.field());
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1, m.field());
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    const Scalar term = m(0, c) * det_cofactor(minor);
    sum += c % 2 == 0 ? term : -term;
  }
  return sum;
}

// Rank of a rational matrix after reducing mod q. Rows are scaled to clear
// denominators first; never exceeds the rank over Q.
inline std::size_t rank_mod(const Matrix& m, std::uint64_t q) {
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).value().get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_class v = m(r, c).value().get_num() * (l / m(r, c).value().get_den());
      a[r][c] = mpz_fdiv_ui(v.get_mpz_t(), q);
    }
  }
  auto pw = [q](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = b * b % q)
      if (e & 1) r = r * b % q;
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = pw(a[rank][c], q - 2);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c] * inv % q;
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = (a[r][k] + (q - f) * a[rank][k]) % q;
    }
    ++rank;
  }
  return rank;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Field f, std::mt19937_64& rng,
                            long bound = 9) {
  Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = Scalar(f, static_cast<long>(rng() % (2 * bound + 1)) - bound);
  return m;
}

// Product of a random full-rank-ish factorization, so the rank is known to be <= k.
inline Matrix random_rank_matrix(std::size_t rows, std::size_t cols, std::size_t k, Field f,
                                 std::mt19937_64& rng) {
  return random_matrix(rows, k, f, rng) * random_matrix(k, cols, f, rng);
}

}  // namespace oracle
