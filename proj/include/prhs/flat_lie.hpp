#pragma once

// Metric 2-step nilpotent Lie algebras g = (a ⊕_ω a*) ⊕ z0 with a abelian,
// the bracket [(X,X*),(Y,Y*)] = (0, ω(X,Y)) where ⟨ω(X,Y), Z⟩ = F(X,Y,Z),
// and the split inner product ⟨(X,X*),(Y,Y*)⟩ = X*(Y) + Y*(X) ⊕ G0 on z0.
// Basis order is a, then a*, then z0.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prhs/affine.hpp"

namespace prhs {

/// Alternating trilinear form on an m-dimensional space, stored on strictly
/// increasing index triples.
class ThreeForm {
 public:
  using Triple = std::array<std::size_t, 3>;

  ThreeForm() = default;
  explicit ThreeForm(std::size_t m) : m_(m) {}

  std::size_t m() const { return m_; }

  /// Sets F(i,j,k) (and, by alternation, every permutation). Throws InputError
  /// on repeated indices with a nonzero value or on a conflicting entry.
  void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    if (i >= m_ || j >= m_ || k >= m_) throw InputError("3-form index out of range");
    if (i == j || j == k || i == k) {
      if (v != 0) throw InputError("3-form is not alternating: repeated index with nonzero value");
      return;
    }
    auto [key, sign] = normalize({i, j, k});
    const Scalar val = sign * v;
    auto it = values_.find(key);
    if (it != values_.end() && it->second != val)
      throw InputError("3-form is not alternating: conflicting values for a permuted triple");
    if (it == values_.end() && val == 0) return;
    values_[key] = val;
  }

  Scalar operator()(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k) return 0;
    auto [key, sign] = normalize({i, j, k});
    auto it = values_.find(key);
    return it == values_.end() ? Scalar(0) : Scalar(sign * it->second);
  }

  const std::map<Triple, Scalar>& values() const { return values_; }

  static ThreeForm determinant() {
    ThreeForm f(3);
    f.set(0, 1, 2, 1);
    return f;
  }

  friend bool operator==(const ThreeForm&, const ThreeForm&) = default;

 private:
  static std::pair<Triple, int> normalize(Triple t) {
    int sign = 1;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t a = 0; a + 1 < 3; ++a)
        if (t[a] > t[a + 1]) {
          std::swap(t[a], t[a + 1]);
          sign = -sign;
        }
    return {t, sign};
  }

  std::size_t m_ = 0;
  std::map<Triple, Scalar> values_;
};

/// Lie algebra given by structure constants [e_i, e_j] = Σ_l c[i][j][l] e_l,
/// with an inner product.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() = default;

  MetricLieAlgebra(std::vector<std::vector<Vector>> structure, Matrix gram)
      : structure_(std::move(structure)), gram_(std::move(gram)) {
    const std::size_t n = structure_.size();
    if (gram_.rows() != n || !gram_.square()) throw InputError("gram size does not match algebra dimension");
    for (const auto& row : structure_) {
      if (row.size() != n) throw InputError("structure constant table is not square");
      for (const auto& v : row)
        if (v.size() != n) throw InputError("structure constant vector has the wrong length");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (structure_[i][j] != -structure_[j][i]) throw InputError("structure constants are not antisymmetric");
    if (!satisfies_jacobi()) throw InputError("structure constants violate the Jacobi identity");
    if (!gram_.is_symmetric() || inertia(gram_).zero != 0)
      throw InputError("inner product must be symmetric and non-degenerate");
  }

  std::size_t dim() const { return structure_.size(); }
  const Matrix& gram() const { return gram_; }
  const std::vector<std::vector<Vector>>& structure() const { return structure_; }

  Vector bracket(std::span<const Scalar> x, std::span<const Scalar> y) const {
    const std::size_t n = dim();
    Vector r = zero_vector(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        const Scalar f = x[i] * y[j];
        for (std::size_t l = 0; l < n; ++l) r[l] += f * structure_[i][j][l];
      }
    }
    return r;
  }

  const Vector& bracket_basis(std::size_t i, std::size_t j) const { return structure_[i][j]; }

  /// ad(x) as a matrix: column j is [x, e_j].
  Matrix ad(std::span<const Scalar> x) const {
    const std::size_t n = dim();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const Vector col = bracket(x, unit_vector(n, j));
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
  }

  Scalar inner(std::span<const Scalar> x, std::span<const Scalar> y) const { return bilinear(gram_, x, y); }

  bool satisfies_jacobi() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          const Vector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
          const Vector s = bracket(ei, structure_[j][k]) + bracket(ej, structure_[k][i]) + bracket(ek, structure_[i][j]);
          if (!is_zero(s)) return false;
        }
    return true;
  }

  /// [g, g].
  Subspace derived() const {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j) vs.push_back(structure_[i][j]);
    return Subspace::span(dim(), vs);
  }

  /// {x : [x, e_j] = 0 for all j}.
  Subspace center() const {
    const std::size_t n = dim();
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        Vector r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = structure_[i][j][l];
        if (!is_zero(r)) rows.push_back(std::move(r));
      }
    if (rows.empty()) return Subspace::full(n);
    return Subspace::kernel(Matrix::from_rows(n, rows));
  }

 private:
  std::vector<std::vector<Vector>> structure_;
  Matrix gram_;
};

/// Builds (a ⊕_ω a*) ⊕ z0 from F. The z0 form is diag(+1 × z0_positive, −1 × rest).
inline MetricLieAlgebra build_split_algebra(const ThreeForm& f, std::size_t dim_z0, std::size_t z0_positive = 0) {
  const std::size_t m = f.m(), n = 2 * m + dim_z0;
  if (z0_positive > dim_z0) throw InputError("z0 signature exceeds its dimension");
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n, zero_vector(n)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l) c[i][j][m + l] = f(i, j, l);
  Matrix g(n, n);
  g.set_block(0, m, Matrix::identity(m));
  g.set_block(m, 0, Matrix::identity(m));
  for (std::size_t i = 0; i < dim_z0; ++i) g(2 * m + i, 2 * m + i) = i < z0_positive ? 1 : -1;
  return MetricLieAlgebra(std::move(c), std::move(g));
}

/// ⟨[X,Y],Z⟩ = −⟨Y,[X,Z]⟩ on all basis triples.
inline bool check_biinvariant(const MetricLieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const Scalar lhs = g.inner(g.bracket_basis(x, y), unit_vector(n, z));
        const Scalar rhs = -g.inner(unit_vector(n, y), g.bracket_basis(x, z));
        if (lhs != rhs) return false;
      }
  return true;
}

/// The trilinear form ⟨[X,Y],Z⟩ is alternating on all basis triples.
inline bool trilinear_form_alternating(const MetricLieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const Scalar t = g.inner(g.bracket_basis(x, y), unit_vector(n, z));
        if (t != -g.inner(g.bracket_basis(y, x), unit_vector(n, z))) return false;
        if (t != -g.inner(g.bracket_basis(x, z), unit_vector(n, y))) return false;
      }
  return true;
}

/// [[g,g],g] = 0.
inline bool is_two_step_nilpotent(const MetricLieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(g.bracket(g.bracket_basis(i, j), unit_vector(n, k)))) return false;
  return true;
}

/// Flatness of the biinvariant metric ⇔ 2-step nilpotency; only meaningful for
/// biinvariant inner products.
inline bool is_flat(const MetricLieAlgebra& g) {
  if (!check_biinvariant(g)) throw PreconditionError("flatness criterion requires a biinvariant inner product");
  return is_two_step_nilpotent(g);
}

/// X ↦ (½ ad(X), X).
inline AffineLog development_rep(const MetricLieAlgebra& g, const Vector& x) {
  if (x.size() != g.dim()) throw InputError("algebra vector has the wrong dimension");
  return {make_scalar(1, 2) * g.ad(x), x};
}

struct CompactHolonomyReport {
  bool all_wolf_valid = false;
  bool pairwise_products_zero = false;  // ½ad(X)·½ad(Y) = 0
  bool image_sum_is_derived = false;    // Σ im ad(X) = [g,g]
  bool derived_isotropic = false;
  bool generating_set_spans = false;
  Subspace image_sum;
  Subspace derived;

  bool abelian_holonomy() const {
    return all_wolf_valid && pairwise_products_zero && image_sum_is_derived && derived_isotropic;
  }
};

inline CompactHolonomyReport verify_compact_holonomy(const MetricLieAlgebra& g, const std::vector<Vector>& generators) {
  const std::size_t n = g.dim();
  const ScalarProduct q(g.gram());
  CompactHolonomyReport r;
  r.generating_set_spans = Subspace::span(n, generators).is_full();
  std::vector<AffineLog> images;
  for (const auto& x : generators) images.push_back(development_rep(g, x));
  r.all_wolf_valid = std::all_of(images.begin(), images.end(),
                                 [&](const auto& l) { return wolf_check(l.nilpart, l.translation, q).overall(); });
  r.pairwise_products_zero = true;
  for (const auto& a : images)
    for (const auto& b : images)
      if (!(a.nilpart * b.nilpart).is_zero()) r.pairwise_products_zero = false;
  r.image_sum = Subspace::zero(n);
  for (const auto& x : generators) r.image_sum = r.image_sum + Subspace::image(g.ad(x));
  r.derived = g.derived();
  r.image_sum_is_derived = r.image_sum == r.derived;
  r.derived_isotropic = is_totally_isotropic(r.derived, q);
  return r;
}

/// Recovered decomposition: [g,g], the center, an isotropic dual a of [g,g],
/// and z0 = (a ⊕ [g,g])^⊥, with the 3-form induced on a.
struct SplitDecomposition {
  Subspace derived;
  Subspace center;
  Subspace a;
  Subspace z0;
  ThreeForm form;
  bool center_is_derived_perp = false;
  bool z0_central = false;
  bool direct_sum = false;
};

inline SplitDecomposition split_decomposition(const MetricLieAlgebra& g) {
  const std::size_t n = g.dim();
  const ScalarProduct q(g.gram());
  SplitDecomposition d;
  d.derived = g.derived();
  d.center = g.center();
  if (!is_totally_isotropic(d.derived, q)) throw PreconditionError("[g,g] is not totally isotropic");
  d.center_is_derived_perp = d.center == orthogonal_complement(d.derived, q);
  const WittFrame f = witt_frame(d.derived, q);
  const std::size_t k = f.k, m = f.w_dim();
  std::vector<Vector> a_basis, w_basis;
  for (std::size_t i = 0; i < k; ++i) a_basis.push_back(f.basis_change.column(k + m + i));
  for (std::size_t i = 0; i < m; ++i) w_basis.push_back(f.basis_change.column(k + i));
  d.a = Subspace::span(n, a_basis);
  d.z0 = Subspace::span(n, w_basis);
  d.z0_central = d.center.contains(d.z0);
  d.direct_sum = d.a.dim() + d.derived.dim() + d.z0.dim() == n && (d.a + d.derived + d.z0).is_full();
  d.form = ThreeForm(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l)
        d.form.set(i, j, l, g.inner(g.bracket(a_basis[i], a_basis[j]), a_basis[l]));
  return d;
}

/// Rebuild check: in the basis (a, [g,g] duals, z0) the recovered pieces give
/// the split gram [[0,I,0],[I,0,0],[0,0,G0]], [a_i,a_j] = Σ_l F(i,j,l) u_l, and
/// every other basis bracket vanishes.
inline bool split_roundtrip(const MetricLieAlgebra& g, const SplitDecomposition& d) {
  const std::size_t n = g.dim();
  const ScalarProduct q(g.gram());
  const WittFrame f = witt_frame(d.derived, q);
  const std::size_t k = f.k, m = f.w_dim();
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < k; ++i) cols.push_back(f.basis_change.column(k + m + i));
  for (std::size_t i = 0; i < k; ++i) cols.push_back(f.basis_change.column(i));
  for (std::size_t i = 0; i < m; ++i) cols.push_back(f.basis_change.column(k + i));
  const Matrix p = Matrix::from_columns(n, cols);
  Matrix expected(n, n);
  if (k) {
    expected.set_block(0, k, Matrix::identity(k));
    expected.set_block(k, 0, Matrix::identity(k));
  }
  if (m) expected.set_block(2 * k, 2 * k, f.gram_w);
  if (q.restricted_to(p) != expected) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector want = zero_vector(n);
      if (j < k)
        for (std::size_t l = 0; l < k; ++l) want = want + d.form(i, j, l) * cols[k + l];
      if (g.bracket(cols[i], cols[j]) != want) return false;
    }
  return true;
}

/// Subspaces of the built algebra in its fixed basis order.
struct SplitLayout {
  Subspace a, a_dual, z0;
};

inline SplitLayout split_layout(std::size_t m, std::size_t dim_z0) {
  const std::size_t n = 2 * m + dim_z0;
  SplitLayout l;
  std::vector<Vector> a, ad, z;
  for (std::size_t i = 0; i < m; ++i) a.push_back(unit_vector(n, i));
  for (std::size_t i = 0; i < m; ++i) ad.push_back(unit_vector(n, m + i));
  for (std::size_t i = 0; i < dim_z0; ++i) z.push_back(unit_vector(n, 2 * m + i));
  l.a = Subspace::span(n, a);
  l.a_dual = Subspace::span(n, ad);
  l.z0 = Subspace::span(n, z);
  return l;
}

}  // namespace prhs
