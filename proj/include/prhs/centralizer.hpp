#pragma once

// The Lie algebra of the centralizer of a unipotent group inside the affine
// isometry algebra, orbit dimensions, and the transitivity and properness
// certificates built from it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prhs/group.hpp"
#include "prhs/random.hpp"

namespace prhs {

/// Flattens (S, s) as the row-major entries of S followed by s.
inline Vector flatten(const AffineLog& l) {
  Vector v(l.nilpart.entries().begin(), l.nilpart.entries().end());
  v.insert(v.end(), l.translation.begin(), l.translation.end());
  return v;
}

inline AffineLog unflatten(std::size_t n, std::span<const Scalar> v) {
  if (v.size() != n * n + n) throw InputError("flattened affine element has the wrong length");
  AffineLog l = AffineLog::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l.nilpart(i, j) = v[i * n + j];
  for (std::size_t i = 0; i < n; ++i) l.translation[i] = v[n * n + i];
  return l;
}

/// Span of a list of affine algebra elements, in canonical form.
inline Subspace algebra_span(std::size_t n, const std::vector<AffineLog>& elems) {
  std::vector<Vector> flat;
  flat.reserve(elems.size());
  for (const auto& e : elems) flat.push_back(flatten(e));
  return Subspace::span(n * n + n, flat);
}

inline std::vector<AffineLog> algebra_basis(std::size_t n, const Subspace& s) {
  std::vector<AffineLog> out;
  for (const auto& v : s.basis()) out.push_back(unflatten(n, v));
  return out;
}

struct CentralizerAlgebra {
  std::size_t n = 0;
  std::vector<AffineLog> basis;

  std::size_t dim() const { return basis.size(); }
  Subspace span() const { return algebra_span(n, basis); }
  bool contains(const AffineLog& l) const { return span().contains(flatten(l)); }
};

/// Solution space of {Sᵀ G + G S = 0} ∧ {[S, (A_i, v_i)] = 0 for every generator log}.
inline CentralizerAlgebra centralizer_algebra(const IsoGroup& g) {
  if (!g.all_unipotent()) throw PreconditionError("centralizer_algebra requires unipotent generators");
  const std::size_t n = g.dim();
  const std::size_t unknowns = n * n + n;
  auto s_index = [n](std::size_t i, std::size_t j) { return i * n + j; };
  auto t_index = [n](std::size_t i) { return n * n + i; };
  const Matrix& gram = g.form().gram();

  std::vector<Vector> rows;
  // (SᵀG + GS)(a,b) = Σ_c S(c,a) G(c,b) + G(a,c) S(c,b)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Vector r = zero_vector(unknowns);
      for (std::size_t c = 0; c < n; ++c) {
        r[s_index(c, a)] += gram(c, b);
        r[s_index(c, b)] += gram(a, c);
      }
      if (!is_zero(r)) rows.push_back(std::move(r));
    }
  for (const auto& log : g.generator_logs()) {
    const Matrix& am = log.nilpart;
    const Vector& v = log.translation;
    // (SA − AS)(a,b)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector r = zero_vector(unknowns);
        for (std::size_t c = 0; c < n; ++c) {
          r[s_index(a, c)] += am(c, b);
          r[s_index(c, b)] -= am(a, c);
        }
        if (!is_zero(r)) rows.push_back(std::move(r));
      }
    // (Sv − As)(a)
    for (std::size_t a = 0; a < n; ++a) {
      Vector r = zero_vector(unknowns);
      for (std::size_t c = 0; c < n; ++c) {
        r[s_index(a, c)] += v[c];
        r[t_index(c)] -= am(a, c);
      }
      if (!is_zero(r)) rows.push_back(std::move(r));
    }
  }
  CentralizerAlgebra out;
  out.n = n;
  const auto kernel = rows.empty() ? Subspace::full(unknowns).basis() : kernel_basis(Matrix::from_rows(unknowns, rows));
  for (const auto& k : kernel) out.basis.push_back(unflatten(n, k));
  return out;
}

struct OrbitCertificate {
  Vector basepoint;
  std::size_t orbit_dim = 0;
  bool open = false;
};

/// dim span{S x0 + s}: the tangent space of the orbit through x0.
inline OrbitCertificate orbit_dimension(const std::vector<AffineLog>& basis, std::size_t n, const Vector& x0) {
  if (x0.size() != n) throw InputError("basepoint has the wrong dimension");
  std::vector<Vector> tangents;
  tangents.reserve(basis.size());
  for (const auto& b : basis) tangents.push_back(b.nilpart * x0 + b.translation);
  OrbitCertificate c;
  c.basepoint = x0;
  c.orbit_dim = Subspace::span(n, tangents).dim();
  c.open = c.orbit_dim == n;
  return c;
}

inline OrbitCertificate orbit_dimension(const CentralizerAlgebra& c, const Vector& x0) {
  return orbit_dimension(c.basis, c.n, x0);
}

/// Origin, the n unit vectors, then `random_count` seeded rational points.
inline std::vector<Vector> probe_points(std::size_t n, std::uint64_t seed, std::size_t random_count = 5) {
  std::vector<Vector> pts{zero_vector(n)};
  for (std::size_t i = 0; i < n; ++i) pts.push_back(unit_vector(n, i));
  Rng rng(seed);
  for (std::size_t p = 0; p < random_count; ++p) {
    Vector v(n);
    for (auto& x : v) x = rng.rational(9, 5);
    pts.push_back(std::move(v));
  }
  return pts;
}

/// True iff every bracket of basis elements lies in their span.
inline bool closed_under_bracket(std::size_t n, const std::vector<AffineLog>& basis) {
  const Subspace s = algebra_span(n, basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!s.contains(flatten(bracket(basis[i], basis[j])))) return false;
  return true;
}

/// Length of the lower central series of span(basis) under the affine bracket,
/// or nullopt if it does not reach zero (not nilpotent, or not a subalgebra).
inline std::optional<std::size_t> nilpotency_class(std::size_t n, const std::vector<AffineLog>& basis) {
  Subspace term = algebra_span(n, basis);
  std::size_t cls = 0;
  const std::size_t max_steps = term.dim() + 1;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (term.is_zero()) return cls;
    ++cls;
    std::vector<AffineLog> next;
    for (const auto& x : basis)
      for (const auto& y : algebra_basis(n, term)) next.push_back(bracket(x, y));
    Subspace reduced = algebra_span(n, next);
    if (reduced == term) return std::nullopt;
    term = std::move(reduced);
  }
  return std::nullopt;
}

/// Every element of span{linear parts} is nilpotent. Checked by requiring the
/// associative algebra they generate to be nilpotent, which for a Lie
/// subalgebra is equivalent (Engel).
inline bool linear_parts_nilpotent(std::size_t n, const std::vector<AffineLog>& basis) {
  for (const auto& b : basis)
    if (!is_nilpotent(b.nilpart)) return false;
  auto flat = [](const Matrix& m) { return Vector(m.entries().begin(), m.entries().end()); };
  std::vector<Vector> gens;
  for (const auto& b : basis) gens.push_back(flat(b.nilpart));
  const Subspace v = Subspace::span(n * n, gens);
  Subspace power = v;
  for (std::size_t step = 0; step < n; ++step) {
    if (power.is_zero()) return true;
    std::vector<Vector> prods;
    for (const auto& x : v.basis()) {
      Matrix a(n, n);
      for (std::size_t i = 0; i < n * n; ++i) a(i / n, i % n) = x[i];
      for (const auto& y : power.basis()) {
        Matrix b(n, n);
        for (std::size_t i = 0; i < n * n; ++i) b(i / n, i % n) = y[i];
        prods.push_back(flat(a * b));
      }
    }
    power = Subspace::span(n * n, prods);
  }
  return power.is_zero();
}

struct TransitivityCertificate {
  std::vector<AffineLog> subalgebra_basis;
  bool closed_under_bracket = false;
  bool linear_parts_nilpotent = false;
  std::optional<std::size_t> nilpotency_class;
  std::vector<Vector> probes;
  std::vector<std::size_t> orbit_dims;  // per probe
  bool evaluation_surjective = false;   // at every probe
  bool certified = false;
  std::string criterion;
};

inline TransitivityCertificate transitivity_certificate(std::size_t n, std::vector<AffineLog> candidate,
                                                        std::uint64_t seed) {
  TransitivityCertificate t;
  t.subalgebra_basis = std::move(candidate);
  const auto& basis = t.subalgebra_basis;
  t.closed_under_bracket = closed_under_bracket(n, basis);
  t.linear_parts_nilpotent = linear_parts_nilpotent(n, basis);
  if (t.closed_under_bracket) t.nilpotency_class = nilpotency_class(n, basis);
  t.probes = probe_points(n, seed);
  t.evaluation_surjective = true;
  for (const auto& p : t.probes) {
    const auto o = orbit_dimension(basis, n, p);
    t.orbit_dims.push_back(o.orbit_dim);
    if (!o.open) t.evaluation_surjective = false;
  }
  t.certified = t.closed_under_bracket && t.linear_parts_nilpotent && t.evaluation_surjective;
  t.criterion =
      "unipotent subalgebra (bracket-closed, nilpotent linear parts) with surjective evaluation at origin, "
      "unit vectors and " +
      std::to_string(t.probes.size() - 1 - n) + " seeded probes";
  return t;
}

inline TransitivityCertificate transitivity_certificate(const CentralizerAlgebra& c, std::uint64_t seed) {
  return transitivity_certificate(c.n, c.basis, seed);
}

enum class ProperVerdict { proper_on_space, proper_on_open_orbits, undetermined };

inline const char* to_string(ProperVerdict v) {
  switch (v) {
    case ProperVerdict::proper_on_space: return "proper on the whole space";
    case ProperVerdict::proper_on_open_orbits: return "proper on every open centralizer orbit";
    default: return "undetermined";
  }
}

struct PropernessCertificate {
  bool group_closed = false;
  std::string closed_justification;  // "integer-unipotent", "ball-separation (evidence)" or "none"
  std::optional<Scalar> min_ball_distance;
  std::string orbit_condition;  // "transitive", "open-orbit-preserved" or "none"
  std::optional<OrbitCertificate> open_orbit;
  ProperVerdict verdict = ProperVerdict::undetermined;
};

/// Max-norm distance of a group element from the identity in the homogeneous picture.
inline Scalar distance_from_identity(const AffineIsometry& x) {
  Scalar d = 0;
  const Matrix a = x.nilpart();
  for (const auto& e : a.entries()) d = std::max(d, abs_value(e));
  for (const auto& e : x.translation) d = std::max(d, abs_value(e));
  return d;
}

/// Closedness: integer unipotent generators give a discrete subgroup of the
/// integer points, hence closed. Otherwise only ball-separation evidence is
/// recorded. Orbit condition: transitive centralizer, or an open orbit (which
/// the group preserves).
inline PropernessCertificate properness_certificate(const IsoGroup& g, const CentralizerAlgebra& c,
                                                    const std::optional<TransitivityCertificate>& transitive,
                                                    std::uint64_t seed) {
  PropernessCertificate p;
  const bool integer_unipotent = g.all_unipotent() && std::all_of(g.generators().begin(), g.generators().end(), [](const auto& x) {
                                   return x.linear.all_integer() && Matrix::column_vector(x.translation).all_integer();
                                 });
  if (integer_unipotent) {
    p.group_closed = true;
    p.closed_justification = "integer-unipotent";
  } else {
    Scalar best = -1;
    for (const auto& x : word_ball(g, 6)) {
      if (x.is_identity()) continue;
      const Scalar d = distance_from_identity(x);
      if (best < 0 || d < best) best = d;
    }
    if (best > 0) p.min_ball_distance = best;
    p.closed_justification = best > 0 ? "ball-separation (evidence)" : "none";
  }

  if (transitive && transitive->certified) {
    p.orbit_condition = "transitive";
  } else {
    for (const auto& x0 : probe_points(g.dim(), seed)) {
      auto o = orbit_dimension(c, x0);
      if (o.open) {
        p.open_orbit = std::move(o);
        p.orbit_condition = "open-orbit-preserved";
        break;
      }
    }
    if (!p.open_orbit) p.orbit_condition = "none";
  }
  if (p.group_closed && p.orbit_condition == "transitive")
    p.verdict = ProperVerdict::proper_on_space;
  else if (p.group_closed && p.orbit_condition == "open-orbit-preserved")
    p.verdict = ProperVerdict::proper_on_open_orbits;
  return p;
}

/// Searches the probe points for an open centralizer orbit and, if found,
/// returns the group with the open-orbit hypothesis marked certified.
inline std::optional<std::pair<IsoGroup, OrbitCertificate>> certify_open_orbit(const IsoGroup& g,
                                                                             const CentralizerAlgebra& c,
                                                                             std::uint64_t seed) {
  for (const auto& x0 : probe_points(g.dim(), seed)) {
    auto o = orbit_dimension(c, x0);
    if (o.open) return std::make_pair(g.with_hypothesis(Hypothesis::certified), std::move(o));
  }
  return std::nullopt;
}

}  // namespace prhs
