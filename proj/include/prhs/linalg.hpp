#pragma once

// Exact Gaussian elimination and canonical subspaces.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "prhs/matrix.hpp"

namespace prhs {

struct EchelonForm {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form by Gauss-Jordan elimination. Pivots are chosen as
/// the first nonzero entry scanning rows top to bottom, so the result is unique.
inline EchelonForm row_reduce(Matrix m) {
  EchelonForm out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

/// Basis of {x : Mx = 0}, one vector per free column in increasing order.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  const auto ef = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Matrix inverse(const Matrix& m) {
  if (!m.square()) throw InputError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const auto ef = row_reduce(hstack(m, Matrix::identity(n)));
  if (ef.pivots.size() < n || ef.pivots[n - 1] != n - 1) throw PreconditionError("matrix is singular");
  return ef.reduced.block(0, n, n, n);
}

inline bool is_invertible(const Matrix& m) { return m.square() && rank(m) == m.rows(); }

/// A linear subspace of Q^n in canonical form: its basis is the set of nonzero
/// rows of the reduced row echelon form of any spanning set. Two subspaces are
/// equal iff their representations are equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }

  static Subspace full(std::size_t n) {
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) s.basis_.push_back(unit_vector(n, i));
    return s;
  }

  static Subspace span(std::size_t n, std::span<const Vector> vectors) {
    Subspace s(n);
    if (vectors.empty()) return s;
    const auto ef = row_reduce(Matrix::from_rows(n, vectors));
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) s.basis_.push_back(ef.reduced.row(r));
    return s;
  }

  static Subspace span(std::size_t n, std::initializer_list<Vector> vectors) {
    std::vector<Vector> v(vectors);
    return span(n, std::span<const Vector>(v));
  }

  /// Column space of m.
  static Subspace image(const Matrix& m) {
    const auto cols = m.columns();
    return span(m.rows(), cols);
  }

  static Subspace kernel(const Matrix& m) {
    const auto k = kernel_basis(m);
    return span(m.cols(), k);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }
  const std::vector<Vector>& basis() const { return basis_; }

  /// Basis vectors as the columns of an ambient_dim × dim matrix.
  Matrix basis_matrix() const { return Matrix::from_columns(ambient_, basis_); }

  bool contains(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw InputError("vector dimension does not match subspace");
    if (prhs::is_zero(v)) return true;
    std::vector<Vector> rows = basis_;
    rows.emplace_back(v.begin(), v.end());
    return rank(Matrix::from_rows(ambient_, rows)) == basis_.size();
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InputError("ambient dimension mismatch");
    return (*this + other).dim() == dim();
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw InputError("ambient dimension mismatch");
    std::vector<Vector> rows = a.basis_;
    rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
    return span(a.ambient_, rows);
  }

  /// Euclidean annihilator {x : bᵀx = 0 for every basis vector b}.
  Subspace annihilator() const {
    if (basis_.empty()) return full(ambient_);
    return kernel(Matrix::from_rows(ambient_, basis_));
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw InputError("ambient dimension mismatch");
    return (a.annihilator() + b.annihilator()).annihilator();
  }

  /// Image of the subspace under a linear map.
  Subspace mapped_by(const Matrix& m) const {
    if (m.cols() != ambient_) throw InputError("map does not act on this subspace");
    std::vector<Vector> imgs;
    imgs.reserve(basis_.size());
    for (const auto& b : basis_) imgs.push_back(m * b);
    return span(m.rows(), imgs);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
};

struct RankImageKernel {
  std::size_t rank = 0;
  Subspace image;
  Subspace kernel;
};

inline RankImageKernel rank_image_kernel(const Matrix& m) {
  RankImageKernel r;
  r.image = Subspace::image(m);
  r.kernel = Subspace::kernel(m);
  r.rank = r.image.dim();
  return r;
}

/// Solution set of an affine system: particular + kernel.
struct AffineSolution {
  Vector particular;
  Subspace kernel;
};

/// Solves Mx = b exactly. Free variables of the particular solution are zero.
inline std::optional<AffineSolution> solve_affine(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw InputError("right-hand side length does not match matrix rows");
  Matrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, m.cols()) = b[i];
  const auto ef = row_reduce(aug);
  if (!ef.pivots.empty() && ef.pivots.back() == m.cols()) return std::nullopt;
  AffineSolution sol;
  sol.particular = zero_vector(m.cols());
  for (std::size_t r = 0; r < ef.pivots.size(); ++r) sol.particular[ef.pivots[r]] = ef.reduced(r, m.cols());
  sol.kernel = Subspace::kernel(m);
  return sol;
}

inline std::optional<AffineSolution> solve_affine(const Matrix& m, const Vector& b) {
  return solve_affine(m, std::span<const Scalar>(b));
}

}  // namespace prhs
