#pragma once

// Finitely generated groups of affine isometries and the invariants attached
// to groups whose centralizer has an open orbit.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "prhs/affine.hpp"

namespace prhs {

/// Raised when two routes that must agree on a valid group disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a generator log does not have the block shape forced on a group
/// with an open centralizer orbit.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the open-orbit hypothesis on the centralizer is known to hold.
enum class Hypothesis { unverified, asserted, certified };

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::asserted: return "asserted";
    case Hypothesis::certified: return "certified";
    default: return "unverified";
  }
}

class IsoGroup {
 public:
  IsoGroup(ScalarProduct q, std::vector<AffineIsometry> generators, Hypothesis hypothesis = Hypothesis::unverified)
      : q_(std::move(q)), generators_(std::move(generators)), hypothesis_(hypothesis) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& g = generators_[i];
      if (g.linear.rows() != q_.dim() || !g.linear.square() || g.translation.size() != q_.dim())
        throw InputError("generator " + std::to_string(i) + " has the wrong dimension");
      if (!is_isometry(g, q_)) throw InputError("generator " + std::to_string(i) + " is not an isometry");
    }
  }

  const ScalarProduct& form() const { return q_; }
  std::size_t dim() const { return q_.dim(); }
  const std::vector<AffineIsometry>& generators() const { return generators_; }
  Hypothesis hypothesis() const { return hypothesis_; }
  bool hypothesis_holds() const { return hypothesis_ != Hypothesis::unverified; }

  IsoGroup with_hypothesis(Hypothesis h) const {
    IsoGroup g = *this;
    g.hypothesis_ = h;
    return g;
  }

  /// Logs of the generators; requires unipotent linear parts.
  std::vector<AffineLog> generator_logs() const {
    std::vector<AffineLog> logs;
    logs.reserve(generators_.size());
    for (const auto& g : generators_) logs.push_back(log_affine(g));
    return logs;
  }

  bool all_unipotent() const {
    return std::all_of(generators_.begin(), generators_.end(), [](const auto& g) { return is_unipotent(g); });
  }

  bool all_wolf_valid() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const auto& g) { return wolf_check(g, q_).overall(); });
  }

 private:
  ScalarProduct q_;
  std::vector<AffineIsometry> generators_;
  Hypothesis hypothesis_ = Hypothesis::unverified;
};

inline AffineIsometry power(const AffineIsometry& g, long e) {
  AffineIsometry base = e < 0 ? inverse(g) : g;
  AffineIsometry r = AffineIsometry::identity(g.dim());
  for (long i = 0; i < std::labs(e); ++i) r = compose(r, base);
  return r;
}

/// All distinct products of at most `radius` generators and inverses, in
/// breadth-first order (generator order g1, g1⁻¹, g2, g2⁻¹, ...).
inline std::vector<AffineIsometry> word_ball(const IsoGroup& g, std::size_t radius) {
  std::vector<AffineIsometry> letters;
  for (const auto& x : g.generators()) {
    letters.push_back(x);
    letters.push_back(inverse(x));
  }
  std::vector<AffineIsometry> ball{AffineIsometry::identity(g.dim())};
  std::set<AffineIsometry> seen(ball.begin(), ball.end());
  std::size_t layer_begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t layer_end = ball.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (const auto& l : letters) {
        auto w = compose(ball[i], l);
        if (seen.insert(w).second) ball.push_back(std::move(w));
      }
    layer_begin = layer_end;
    if (layer_begin == ball.size()) break;
  }
  return ball;
}

inline bool commute(const AffineIsometry& a, const AffineIsometry& b) { return compose(a, b) == compose(b, a); }

/// Class ≤ 2 iff every commutator of generators is central, which for a finitely
/// generated group it suffices to test against the generators.
inline bool nilpotency_class_at_most_two(const IsoGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto c = commutator(gens[i], gens[j]);
      for (const auto& x : gens)
        if (!commute(c, x)) return false;
    }
  return true;
}

struct HolonomyVerdict {
  bool abelian = true;
  bool linear_parts_commute = true;  // criterion (i)
  bool products_vanish = true;       // criterion (ii): A_i A_j = 0
  bool span_isotropic = true;        // criterion (iii): U_Γ totally isotropic
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // generator pair with A_i A_j ≠ 0
};

inline Subspace sum_of_images(std::size_t n, const std::vector<AffineLog>& logs) {
  Subspace u = Subspace::zero(n);
  for (const auto& l : logs) u = u + Subspace::image(l.nilpart);
  return u;
}

/// Evaluates the three equivalent abelianness criteria independently and
/// throws ConsistencyError if they disagree.
inline HolonomyVerdict holonomy_abelian(const IsoGroup& g) {
  if (!g.all_wolf_valid()) throw PreconditionError("holonomy_abelian requires Wolf-valid generators");
  const auto& gens = g.generators();
  const auto logs = g.generator_logs();
  HolonomyVerdict v;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i].linear * gens[j].linear != gens[j].linear * gens[i].linear) v.linear_parts_commute = false;
  for (std::size_t i = 0; i < logs.size() && !v.witness; ++i)
    for (std::size_t j = 0; j < logs.size(); ++j)
      if (!(logs[i].nilpart * logs[j].nilpart).is_zero()) {
        v.products_vanish = false;
        v.witness = std::make_pair(i, j);
        break;
      }
  v.span_isotropic = is_totally_isotropic(sum_of_images(g.dim(), logs), g.form());
  if (v.linear_parts_commute != v.products_vanish || v.products_vanish != v.span_isotropic)
    throw ConsistencyError("abelian holonomy criteria disagree: commuting=" + std::to_string(v.linear_parts_commute) +
                           " products=" + std::to_string(v.products_vanish) +
                           " isotropic=" + std::to_string(v.span_isotropic));
  v.abelian = v.products_vanish;
  return v;
}

struct InvariantSpaces {
  Subspace u_gamma;
  Subspace u_delta;
  Subspace u_0;
  std::vector<AffineIsometry> center_sample;  // nontrivial central elements used for U_Δ
  bool radius_two_rule = true;                // Δ approximated from a finite candidate set
};

/// Candidates for central elements: the radius-2 ball and all generator
/// commutators (which are central in a class-2 group).
inline std::vector<AffineIsometry> center_candidates(const IsoGroup& g) {
  auto cands = word_ball(g, 2);
  std::set<AffineIsometry> seen(cands.begin(), cands.end());
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      auto c = commutator(gens[i], gens[j]);
      if (seen.insert(c).second) cands.push_back(std::move(c));
    }
  return cands;
}

inline InvariantSpaces invariant_spaces(const IsoGroup& g) {
  if (!g.all_wolf_valid()) throw PreconditionError("invariant_spaces requires Wolf-valid generators");
  const std::size_t n = g.dim();
  InvariantSpaces s;
  s.u_gamma = sum_of_images(n, g.generator_logs());
  s.u_delta = Subspace::zero(n);
  for (auto& c : center_candidates(g)) {
    if (c.is_identity()) continue;
    const bool central = std::all_of(g.generators().begin(), g.generators().end(),
                                     [&](const auto& x) { return commute(c, x); });
    if (!central) continue;
    s.u_delta = s.u_delta + Subspace::image(log_affine(c).nilpart);
    s.center_sample.push_back(std::move(c));
  }
  s.u_0 = intersect(s.u_gamma, orthogonal_complement(s.u_gamma, g.form()));
  return s;
}

/// A maps R^n → U_Δ^⊥ → U_0 → 0 for every generator log A.
inline bool chain_stabilization_check(const IsoGroup& g, const InvariantSpaces& s) {
  const std::size_t n = g.dim();
  const Subspace delta_perp = orthogonal_complement(s.u_delta, g.form());
  for (const auto& l : g.generator_logs()) {
    if (!delta_perp.contains(Subspace::full(n).mapped_by(l.nilpart))) return false;
    if (!s.u_0.contains(delta_perp.mapped_by(l.nilpart))) return false;
    if (!s.u_0.mapped_by(l.nilpart).is_zero()) return false;
  }
  return true;
}

/// B and C blocks of a log in frame coordinates:
///   [[0, −Bᵀ G_W, C], [0, 0, B], [0, 0, 0]].
struct Blocks {
  Matrix b;  // (n−2k) × k
  Matrix c;  // k × k
};

inline Matrix to_frame(const Matrix& a, const WittFrame& f) {
  return inverse(f.basis_change) * a * f.basis_change;
}

inline Matrix from_frame(const Matrix& a, const WittFrame& f) {
  return f.basis_change * a * inverse(f.basis_change);
}

/// Rebuilds the frame-coordinate matrix from its blocks.
inline Matrix assemble_blocks(const Blocks& bl, const WittFrame& f) {
  const std::size_t k = f.k, m = f.w_dim(), n = f.dim();
  Matrix a(n, n);
  if (k == 0) return a;
  a.set_block(0, k, -(bl.b.transpose() * f.gram_w));
  a.set_block(0, k + m, bl.c);
  if (m > 0) a.set_block(k, k + m, bl.b);
  return a;
}

/// Extracts (B, C) from a log given in original coordinates. Throws
/// StructuralError when the zero pattern or block constraints fail.
inline Blocks extract_blocks(const Matrix& a, const WittFrame& f) {
  const std::size_t k = f.k, m = f.w_dim();
  const Matrix t = to_frame(a, f);
  Blocks bl;
  bl.b = t.block(k, k + m, m, k);
  bl.c = t.block(0, k + m, k, k);
  if (assemble_blocks(bl, f) != t) throw StructuralError("log does not have the block form in this Witt frame");
  if (!bl.c.is_skew()) throw StructuralError("C block is not skew-symmetric");
  if (!(bl.b.transpose() * f.gram_w * bl.b).is_zero())
    throw StructuralError("B columns are not isotropic and mutually orthogonal");
  return bl;
}

struct StructureBlocks {
  std::vector<Blocks> per_generator;
};

inline StructureBlocks structure_blocks(const IsoGroup& g, const WittFrame& f) {
  if (!g.hypothesis_holds())
    throw PreconditionError("structure_blocks requires the open-orbit hypothesis (certify or assert it)");
  StructureBlocks out;
  for (const auto& l : g.generator_logs()) out.per_generator.push_back(extract_blocks(l.nilpart, f));
  return out;
}

struct CrossoverReport {
  Matrix pairing;  // pairing(j, i) = ⟨b_1^j, b_2^i⟩ = (B1ᵀ G_W B2)(j, i)
  bool antisymmetric = false;
  bool commuting = false;  // A1 A2 = 0
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (i, k) with ⟨b_1^i, b_2^k⟩ ≠ 0
  std::size_t witness_rank = 0;  // rank of {b_1^k, b_1^i, b_2^k, b_2^i}
};

inline CrossoverReport crossover_duality(const AffineLog& a1, const AffineLog& a2, const WittFrame& f) {
  const Blocks b1 = extract_blocks(a1.nilpart, f);
  const Blocks b2 = extract_blocks(a2.nilpart, f);
  CrossoverReport r;
  r.pairing = b1.b.transpose() * f.gram_w * b2.b;
  r.antisymmetric = (r.pairing + r.pairing.transpose()).is_zero();
  r.commuting = (a1.nilpart * a2.nilpart).is_zero();
  for (std::size_t i = 0; i < f.k && !r.witness; ++i)
    for (std::size_t k = 0; k < f.k; ++k)
      if (r.pairing(i, k) != 0) {
        r.witness = std::make_pair(i, k);
        const std::vector<Vector> cols{b1.b.column(k), b1.b.column(i), b2.b.column(k), b2.b.column(i)};
        r.witness_rank = rank(Matrix::from_columns(f.w_dim(), cols));
        break;
      }
  return r;
}

struct DimensionBound {
  std::size_t dim_u0 = 0;
  std::size_t dim_w = 0;
  std::size_t dim_w_needed = 0;  // rank of the independent B-column witness
  std::size_t c_rank = 0;        // rank of the commutator's C block
  std::size_t n = 0;
  std::pair<std::size_t, std::size_t> generator_pair{0, 0};
  bool holds = false;  // dim U0 ≥ 2, witness rank 4, n ≥ 8
};

inline DimensionBound dimension_bound_decomposition(const IsoGroup& g) {
  const auto hol = holonomy_abelian(g);
  if (hol.abelian) throw PreconditionError("dimension bound applies only to non-abelian holonomy");
  if (!g.hypothesis_holds()) throw PreconditionError("dimension bound requires the open-orbit hypothesis");
  const auto spaces = invariant_spaces(g);
  const WittFrame f = witt_frame(spaces.u_0, g.form());
  const auto logs = g.generator_logs();
  const auto [i, j] = *hol.witness;
  const auto cross = crossover_duality(logs[i], logs[j], f);
  const auto comm = log_affine(commutator(g.generators()[i], g.generators()[j]));
  const Blocks c3 = extract_blocks(comm.nilpart, f);

  DimensionBound d;
  d.generator_pair = {i, j};
  d.dim_u0 = f.k;
  d.dim_w = f.w_dim();
  d.dim_w_needed = cross.witness_rank;
  d.c_rank = rank(c3.c);
  d.n = g.dim();
  d.holds = cross.witness && d.dim_w_needed == 4 && d.c_rank >= 2 && d.dim_u0 >= 2 && d.dim_w >= 4 && d.n >= 8;
  return d;
}

struct LemmaIdentities {
  bool commutator_closed_form = true;  // [γi,γj] = (I + 2 Ai Aj, 2 Ai vj)
  bool product_kills_translation = true;  // Ai Aj vi = 0
  bool triple_products_vanish = true;  // Ai Aj Ak = 0
  bool delta_perp_gamma = true;  // U_Δ ⊥ U_Γ
  std::size_t members = 0;

  bool all() const {
    return commutator_closed_form && product_kills_translation && triple_products_vanish && delta_perp_gamma;
  }
};

/// Checks the pairwise/triple identities on generators, their inverses and
/// generator commutators, and orthogonality of U_Δ and U_Γ.
inline LemmaIdentities lemma_identities(const IsoGroup& g) {
  if (!g.hypothesis_holds())
    throw PreconditionError("lemma identities require the open-orbit hypothesis (certify or assert it)");
  std::vector<AffineIsometry> members;
  for (const auto& x : g.generators()) {
    members.push_back(x);
    members.push_back(inverse(x));
  }
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) members.push_back(commutator(gens[i], gens[j]));

  LemmaIdentities r;
  r.members = members.size();
  const std::size_t n = g.dim();
  std::vector<AffineLog> logs;
  for (const auto& m : members) logs.push_back(log_affine(m));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      const Matrix& ai = logs[i].nilpart;
      const Matrix& aj = logs[j].nilpart;
      const Matrix li = members[i].nilpart();
      const Matrix lj = members[j].nilpart();
      const AffineIsometry closed{Matrix::identity(n) + Scalar(2) * (li * lj), Scalar(2) * (li * members[j].translation)};
      if (commutator(members[i], members[j]) != closed) r.commutator_closed_form = false;
      if (!prhs::is_zero(ai * aj * logs[i].translation)) r.product_kills_translation = false;
      const Matrix aij = ai * aj;
      for (std::size_t k = 0; k < members.size(); ++k)
        if (!(aij * logs[k].nilpart).is_zero()) r.triple_products_vanish = false;
    }
  const auto spaces = invariant_spaces(g);
  r.delta_perp_gamma = spaces.u_delta.is_zero() || spaces.u_gamma.is_zero() ||
                       (spaces.u_delta.basis_matrix().transpose() * g.form().gram() * spaces.u_gamma.basis_matrix())
                           .is_zero();
  return r;
}

/// Normal form (a, b, c) ↦ γ1^a γ2^b γ3^c of a discrete Heisenberg group with
/// γ3 = [γ1, γ2] central. Multiplication:
///   (a,b,c)(a',b',c') = (a+a', b+b', c+c' − b a').
struct HeisenbergPresentation {
  AffineIsometry g1, g2, g3;

  struct Exponents {
    long a = 0, b = 0, c = 0;
    friend bool operator==(const Exponents&, const Exponents&) = default;
  };

  static Exponents multiply(const Exponents& x, const Exponents& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c - x.b * y.a};
  }

  AffineIsometry element(const Exponents& e) const {
    return compose(compose(power(g1, e.a), power(g2, e.b)), power(g3, e.c));
  }

  /// [γ1,γ2] = γ3 and γ3 commutes with γ1, γ2.
  bool relations_hold() const {
    return commutator(g1, g2) == g3 && commute(g3, g1) && commute(g3, g2);
  }
};

inline HeisenbergPresentation heisenberg_presentation(const IsoGroup& g) {
  if (g.generators().size() != 2) throw InputError("Heisenberg presentation needs exactly two generators");
  const auto& gs = g.generators();
  return {gs[0], gs[1], commutator(gs[0], gs[1])};
}

struct FreenessResult {
  bool free = true;
  std::size_t elements_checked = 0;
  std::size_t elements_with_fixed_points = 0;
  std::optional<AffineIsometry> witness_element;
  std::optional<HeisenbergPresentation::Exponents> witness_exponents;
  std::optional<Vector> witness_point;
};

/// Exponent triples in the box |a|,|b|,|c| ≤ bound, center first: ordered by
/// (|a|+|b|, |c|, c < 0, a, b, c). Excludes the identity.
inline std::vector<HeisenbergPresentation::Exponents> exponent_box(long bound) {
  std::vector<HeisenbergPresentation::Exponents> out;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c)
        if (a || b || c) out.push_back({a, b, c});
  auto key = [](const HeisenbergPresentation::Exponents& e) {
    return std::make_tuple(std::labs(e.a) + std::labs(e.b), std::labs(e.c), e.c < 0, e.a, e.b, e.c);
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  return out;
}

/// Checks that no element in a Heisenberg exponent box has a fixed point.
inline FreenessResult is_free_on_space(const HeisenbergPresentation& p, long bound) {
  FreenessResult r;
  std::map<long, AffineIsometry> p1, p2, p3;
  for (long e = -bound; e <= bound; ++e) {
    p1.emplace(e, power(p.g1, e));
    p2.emplace(e, power(p.g2, e));
    p3.emplace(e, power(p.g3, e));
  }
  for (const auto& e : exponent_box(bound)) {
    const auto x = compose(compose(p1.at(e.a), p2.at(e.b)), p3.at(e.c));
    ++r.elements_checked;
    if (auto fp = fixed_points(x)) {
      ++r.elements_with_fixed_points;
      if (r.free) {
        r.free = false;
        r.witness_element = x;
        r.witness_exponents = e;
        r.witness_point = fp->particular;
      }
    }
  }
  return r;
}

/// Word-ball variant for groups without an attached presentation.
inline FreenessResult is_free_on_space(const IsoGroup& g, std::size_t radius) {
  FreenessResult r;
  for (const auto& x : word_ball(g, radius)) {
    if (x.is_identity()) continue;
    ++r.elements_checked;
    if (auto fp = fixed_points(x)) {
      ++r.elements_with_fixed_points;
      if (r.free) {
        r.free = false;
        r.witness_element = x;
        r.witness_point = fp->particular;
      }
    }
  }
  return r;
}

}  // namespace prhs
