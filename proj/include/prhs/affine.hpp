#pragma once

// Affine maps x ↦ Lx + v, their exact log/exp in the homogeneous (n+1)-dim
// representation, and the structural conditions satisfied by elements of a
// group whose centralizer has an open orbit.

#include <cstddef>
#include <optional>
#include <utility>

#include "prhs/forms.hpp"

namespace prhs {

struct AffineIsometry {
  Matrix linear;
  Vector translation;

  std::size_t dim() const { return linear.rows(); }

  static AffineIsometry identity(std::size_t n) { return {Matrix::identity(n), zero_vector(n)}; }
  static AffineIsometry translation_by(Vector v) {
    const std::size_t n = v.size();
    return {Matrix::identity(n), std::move(v)};
  }

  /// A = linear − I.
  Matrix nilpart() const { return linear - Matrix::identity(dim()); }

  bool is_identity() const { return linear == Matrix::identity(dim()) && prhs::is_zero(translation); }

  Vector apply(std::span<const Scalar> x) const { return linear * x + translation; }

  friend bool operator==(const AffineIsometry&, const AffineIsometry&) = default;
  friend bool operator<(const AffineIsometry& a, const AffineIsometry& b) {
    if (a.linear == b.linear) return a.translation < b.translation;
    return a.linear < b.linear;
  }
};

/// Element of the affine Lie algebra: x ↦ Ax + v as an infinitesimal map.
struct AffineLog {
  Matrix nilpart;
  Vector translation;

  std::size_t dim() const { return nilpart.rows(); }

  static AffineLog zero(std::size_t n) { return {Matrix(n, n), zero_vector(n)}; }

  friend bool operator==(const AffineLog&, const AffineLog&) = default;
};

namespace detail {

inline void require_affine_shape(const Matrix& linear, const Vector& translation) {
  if (!linear.square() || linear.rows() != translation.size())
    throw InputError("affine map has inconsistent linear/translation dimensions");
}

inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw InputError("affine maps of different dimensions");
}

}  // namespace detail

/// [[L, v], [0, 1]].
inline Matrix homogeneous(const AffineIsometry& g) {
  detail::require_affine_shape(g.linear, g.translation);
  const std::size_t n = g.dim();
  Matrix h(n + 1, n + 1);
  h.set_block(0, 0, g.linear);
  for (std::size_t i = 0; i < n; ++i) h(i, n) = g.translation[i];
  h(n, n) = 1;
  return h;
}

/// [[A, v], [0, 0]].
inline Matrix homogeneous(const AffineLog& l) {
  detail::require_affine_shape(l.nilpart, l.translation);
  const std::size_t n = l.dim();
  Matrix h(n + 1, n + 1);
  h.set_block(0, 0, l.nilpart);
  for (std::size_t i = 0; i < n; ++i) h(i, n) = l.translation[i];
  return h;
}

inline AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b) {
  detail::require_same_dim(a.dim(), b.dim());
  return {a.linear * b.linear, a.linear * b.translation + a.translation};
}

inline AffineIsometry inverse(const AffineIsometry& g) {
  Matrix li = prhs::inverse(g.linear);
  Vector t = -(li * g.translation);
  return {std::move(li), std::move(t)};
}

/// γ1 γ2 γ1⁻¹ γ2⁻¹.
inline AffineIsometry commutator(const AffineIsometry& a, const AffineIsometry& b) {
  detail::require_same_dim(a.dim(), b.dim());
  return compose(compose(a, b), compose(inverse(a), inverse(b)));
}

/// Affine Lie bracket [(X,x),(Y,y)] = (XY − YX, Xy − Yx).
inline AffineLog bracket(const AffineLog& a, const AffineLog& b) {
  detail::require_same_dim(a.dim(), b.dim());
  return {prhs::bracket(a.nilpart, b.nilpart), a.nilpart * b.translation - b.nilpart * a.translation};
}

inline AffineLog operator+(const AffineLog& a, const AffineLog& b) {
  return {a.nilpart + b.nilpart, a.translation + b.translation};
}

inline AffineLog operator*(const Scalar& s, const AffineLog& a) { return {s * a.nilpart, s * a.translation}; }

/// Lᵀ G L = G.
inline bool is_isometry(const AffineIsometry& g, const ScalarProduct& q) {
  if (g.dim() != q.dim() || g.translation.size() != q.dim()) return false;
  return g.linear.transpose() * q.gram() * g.linear == q.gram();
}

struct WolfReport {
  bool square_zero = false;             // A² = 0
  bool translation_orthogonal = false;  // v ⊥ im A
  bool image_isotropic = false;         // im A totally isotropic
  bool skew_adjoint = false;            // ⟨Ax,y⟩ = −⟨x,Ay⟩
  bool image_kernel_duality = false;    // im A = (ker A)^⊥
  bool kills_translation = false;       // Av = 0

  bool overall() const {
    return square_zero && translation_orthogonal && image_isotropic && skew_adjoint && image_kernel_duality &&
           kills_translation;
  }
};

/// Evaluates every condition on A and v; never short-circuits.
inline WolfReport wolf_check(const Matrix& a, const Vector& v, const ScalarProduct& q) {
  detail::require_affine_shape(a, v);
  detail::require_same_dim(a.rows(), q.dim());
  const Matrix& g = q.gram();
  const Matrix at = a.transpose();
  WolfReport r;
  r.square_zero = (a * a).is_zero();
  r.translation_orthogonal = prhs::is_zero(at * (g * v));
  r.image_isotropic = (at * g * a).is_zero();
  r.skew_adjoint = (g * a + at * g).is_zero();
  r.image_kernel_duality = Subspace::image(a) == orthogonal_complement(Subspace::kernel(a), q);
  r.kills_translation = prhs::is_zero(a * v);
  return r;
}

inline WolfReport wolf_check(const AffineIsometry& g, const ScalarProduct& q) {
  return wolf_check(g.nilpart(), g.translation, q);
}

inline bool is_unipotent(const AffineIsometry& g) { return is_nilpotent(g.nilpart()); }

/// Exact logarithm of a unipotent affine map: the series Σ (−1)^{k+1} N^k / k
/// of the homogeneous matrix I + N terminates.
inline AffineLog log_affine(const AffineIsometry& g) {
  if (!is_unipotent(g)) throw PreconditionError("log_affine requires a unipotent linear part");
  const std::size_t n = g.dim();
  const Matrix nil = homogeneous(g) - Matrix::identity(n + 1);
  Matrix sum(n + 1, n + 1);
  Matrix term = nil;
  for (std::size_t k = 1; k <= n + 1 && !term.is_zero(); ++k) {
    const Scalar coeff = make_scalar(k % 2 == 1 ? 1 : -1, static_cast<std::int64_t>(k));
    sum += coeff * term;
    term = term * nil;
  }
  AffineLog out{sum.block(0, 0, n, n), sum.block(0, n, n, 1).column(0)};
  return out;
}

/// Exact exponential of an affine Lie algebra element with nilpotent linear part.
inline AffineIsometry exp_affine(const AffineLog& l) {
  if (!is_nilpotent(l.nilpart)) throw PreconditionError("exp_affine requires a nilpotent linear part");
  const std::size_t n = l.dim();
  const Matrix x = homogeneous(l);
  Matrix sum = Matrix::identity(n + 1);
  Matrix term = Matrix::identity(n + 1);
  mpz_class factorial = 1;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    term = term * x;
    if (term.is_zero()) break;
    factorial *= static_cast<unsigned long>(k);
    sum += Scalar(mpz_class(1), factorial) * term;
  }
  return {sum.block(0, 0, n, n), sum.block(0, n, n, 1).column(0)};
}

/// Fixed set {x : γx = x} = {x : Ax = −v}, as particular point + direction space.
inline std::optional<AffineSolution> fixed_points(const AffineIsometry& g) {
  return solve_affine(g.nilpart(), -g.translation);
}

}  // namespace prhs
