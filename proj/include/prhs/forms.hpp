#pragma once

// Non-degenerate symmetric bilinear forms: inertia, orthogonality, isotropy
// and Witt frames adapted to a totally isotropic subspace.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "prhs/linalg.hpp"

namespace prhs {

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia by exact symmetric elimination (congruence
/// diagonalization).
inline Inertia inertia(const Matrix& gram) {
  if (!gram.is_symmetric()) throw InputError("inertia requires a symmetric matrix");
  Matrix g = gram;
  const std::size_t n = g.rows();
  Inertia out;

  auto swap_index = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) std::swap(g(a, j), g(b, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
  };
  // e_a <- e_a + e_b, applied on both sides.
  auto add_index = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) g(a, j) += g(b, j);
    for (std::size_t i = 0; i < n; ++i) g(i, a) += g(i, b);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && g(j, j) == 0) ++j;
      if (j < n) {
        swap_index(i, j);
      } else {
        j = i + 1;
        while (j < n && g(i, j) == 0) ++j;
        if (j == n) {
          ++out.zero;
          continue;
        }
        // g(i,i) = g(j,j) = 0 here, so the new diagonal entry is 2 g(i,j).
        add_index(i, j);
      }
    }
    const Scalar pivot = g(i, i);
    const Vector pr = g.row(i);
    for (std::size_t r = i + 1; r < n; ++r) {
      if (pr[r] == 0) continue;
      const Scalar f = pr[r] / pivot;
      for (std::size_t c = i + 1; c < n; ++c) g(r, c) -= f * pr[c];
      g(r, i) = 0;
      g(i, r) = 0;
    }
    if (pivot > 0)
      ++out.positive;
    else
      ++out.negative;
  }
  return out;
}

/// A non-degenerate symmetric bilinear form with its signature cached.
class ScalarProduct {
 public:
  ScalarProduct() = default;

  explicit ScalarProduct(Matrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw InputError("scalar product gram matrix must be symmetric");
    inertia_ = prhs::inertia(gram_);
    if (inertia_.zero != 0) throw InputError("scalar product gram matrix is degenerate");
  }

  /// diag(+1 × positive, −1 × negative).
  static ScalarProduct standard(std::size_t positive, std::size_t negative) {
    Matrix g(positive + negative, positive + negative);
    for (std::size_t i = 0; i < positive + negative; ++i) g(i, i) = i < positive ? 1 : -1;
    return ScalarProduct(std::move(g));
  }

  const Matrix& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }
  const Inertia& signature() const { return inertia_; }

  Scalar operator()(std::span<const Scalar> x, std::span<const Scalar> y) const { return bilinear(gram_, x, y); }

  /// Gram matrix of a list of vectors (columns of `vectors`).
  Matrix restricted_to(const Matrix& vectors) const { return vectors.transpose() * gram_ * vectors; }

  friend bool operator==(const ScalarProduct& a, const ScalarProduct& b) { return a.gram_ == b.gram_; }

 private:
  Matrix gram_;
  Inertia inertia_;
};

/// {x : ⟨x,u⟩ = 0 for all u ∈ U}.
inline Subspace orthogonal_complement(const Subspace& u, const ScalarProduct& q) {
  if (u.ambient_dim() != q.dim()) throw InputError("subspace and form have different dimensions");
  if (u.is_zero()) return Subspace::full(q.dim());
  std::vector<Vector> rows;
  rows.reserve(u.dim());
  for (const auto& b : u.basis()) rows.push_back(q.gram() * b);
  return Subspace::kernel(Matrix::from_rows(q.dim(), rows));
}

inline bool is_totally_isotropic(const Subspace& u, const ScalarProduct& q) {
  if (u.ambient_dim() != q.dim()) throw InputError("subspace and form have different dimensions");
  const auto& b = u.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      if (q(b[i], b[j]) != 0) return false;
  return true;
}

/// Basis u_1..u_k, w_1..w_{n-2k}, u_1*..u_k* with U0 = span(u), ⟨u_i,u_j*⟩ = δ_ij,
/// both u and u* isotropic, and W orthogonal to both.
struct WittFrame {
  std::size_t k = 0;
  Matrix basis_change;  // columns: u..., w..., u*...
  Matrix gram_w;

  std::size_t dim() const { return basis_change.rows(); }
  std::size_t w_dim() const { return dim() - 2 * k; }

  /// Gram matrix of the form in frame coordinates.
  Matrix transformed_gram(const ScalarProduct& q) const { return q.restricted_to(basis_change); }

  /// The Gram matrix a valid frame must produce: [[0,0,I],[0,gram_w,0],[I,0,0]].
  Matrix expected_gram() const {
    const std::size_t n = dim(), m = w_dim();
    Matrix g(n, n);
    g.set_block(0, k + m, Matrix::identity(k));
    g.set_block(k + m, 0, Matrix::identity(k));
    g.set_block(k, k, gram_w);
    return g;
  }

  bool valid_for(const ScalarProduct& q) const {
    return is_invertible(basis_change) && transformed_gram(q) == expected_gram();
  }
};

/// Witt frame adapted to a totally isotropic U0. The u_i are the canonical
/// basis of U0; each u_i* starts as the minimal-index particular solution of
/// ⟨u_j, x⟩ = δ_ij and is then corrected to be isotropic; W is the canonical
/// basis of (U0 ⊕ U0*)^⊥.
inline WittFrame witt_frame(const Subspace& u0, const ScalarProduct& q) {
  const std::size_t n = q.dim();
  if (u0.ambient_dim() != n) throw InputError("subspace and form have different dimensions");
  if (!is_totally_isotropic(u0, q)) throw PreconditionError("witt_frame requires a totally isotropic subspace");
  const std::size_t k = u0.dim();
  const auto& us = u0.basis();

  // Rows (G u_j)ᵀ, so that the system reads ⟨u_j, x⟩ = rhs_j.
  std::vector<Vector> rows;
  for (const auto& u : us) rows.push_back(q.gram() * u);
  std::vector<Vector> duals;
  if (k > 0) {
    const Matrix pairing = Matrix::from_rows(n, rows);
    for (std::size_t i = 0; i < k; ++i) {
      auto sol = solve_affine(pairing, unit_vector(k, i));
      if (!sol) throw PreconditionError("no dual vector for isotropic subspace (degenerate form?)");
      duals.push_back(std::move(sol->particular));
    }
  }
  // y_i = x_i − Σ_j ½⟨x_i,x_j⟩ u_j makes the duals mutually orthogonal and isotropic.
  std::vector<Vector> stars;
  for (std::size_t i = 0; i < k; ++i) {
    Vector y = duals[i];
    for (std::size_t j = 0; j < k; ++j) {
      const Scalar c = q(duals[i], duals[j]) / 2;
      if (c != 0) y = y - c * us[j];
    }
    stars.push_back(std::move(y));
  }

  std::vector<Vector> hyperbolic = us;
  hyperbolic.insert(hyperbolic.end(), stars.begin(), stars.end());
  const Subspace w = orthogonal_complement(Subspace::span(n, hyperbolic), q);

  std::vector<Vector> columns = us;
  columns.insert(columns.end(), w.basis().begin(), w.basis().end());
  columns.insert(columns.end(), stars.begin(), stars.end());

  WittFrame frame;
  frame.k = k;
  frame.basis_change = Matrix::from_columns(n, columns);
  frame.gram_w = q.restricted_to(w.basis_matrix());
  return frame;
}

}  // namespace prhs
