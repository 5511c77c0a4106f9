#pragma once

// Independent reference computations for the tests. None of these go through
// row reduction, so they do not share code paths with the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "prhs/matrix.hpp"
#include "prhs/random.hpp"

namespace oracle {

using prhs::Matrix;
using prhs::Scalar;
using prhs::Vector;

/// Laplace expansion along the first row.
inline Scalar det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Scalar d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Scalar term = m(0, j) * det(minor);
    d += (j % 2 == 0) ? term : Scalar(-term);
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

inline bool has_nonzero_minor(const Matrix& m, std::size_t k) {
  for (const auto& rs : subsets(m.rows(), k))
    for (const auto& cs : subsets(m.cols(), k)) {
      Matrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
      if (det(sub) != 0) return true;
    }
  return false;
}

/// Largest k with a nonzero k×k minor.
inline std::size_t rank_by_minors(const Matrix& m) {
  std::size_t r = 0;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k)
    if (has_nonzero_minor(m, k)) r = k;
    else break;
  return r;
}

/// Coefficients c_0..c_n of det(tI − M) (c_n = 1), by Faddeev–LeVerrier.
inline std::vector<Scalar> charpoly(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix t = mk;
    for (std::size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
    mk = m * t;
    Scalar tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / Scalar(static_cast<long>(k));
  }
  return c;
}

inline std::size_t sign_changes(const std::vector<Scalar>& c) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& x : c) {
    const int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Inertia of a symmetric matrix from its characteristic polynomial: the roots
/// are real, so Descartes' rule counts positive roots exactly; negative roots
/// come from p(−t), and zero roots from the lowest nonzero coefficient.
inline std::array<std::size_t, 3> inertia(const Matrix& m) {
  auto c = charpoly(m);
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == 0) ++zeros;
  std::vector<Scalar> reduced(c.begin() + static_cast<long>(zeros), c.end());
  std::vector<Scalar> neg = reduced;
  for (std::size_t i = 0; i < neg.size(); ++i)
    if ((i + zeros) % 2 == 1) neg[i] = -neg[i];
  return {sign_changes(reduced), sign_changes(neg), zeros};
}

inline Matrix random_int_matrix(prhs::Rng& rng, std::size_t r, std::size_t c, std::int64_t bound) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(static_cast<long>(rng.uniform(-bound, bound)));
  return m;
}

inline Matrix random_invertible(prhs::Rng& rng, std::size_t n, std::int64_t bound) {
  for (;;) {
    Matrix m = random_int_matrix(rng, n, n, bound);
    if (det(m) != 0) return m;
  }
}

inline Matrix random_symmetric(prhs::Rng& rng, std::size_t n, std::int64_t bound) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = Scalar(static_cast<long>(rng.uniform(-bound, bound)));
  return m;
}

}  // namespace oracle
