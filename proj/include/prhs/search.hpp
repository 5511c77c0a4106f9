#pragma once

// Seeded randomized search over generator pairs in structured block form
//   A = [[0, −Bᵀ G_W, C], [0, 0, B], [0, 0, 0]],  C skew,
// filtered by the necessary conditions A² = 0 (isotropic, mutually orthogonal
// B-columns) and skewness of the pairing matrix B1ᵀ G_W B2.
// A pair is non-abelian iff A1 A2 ≠ 0 iff B1ᵀ G_W B2 ≠ 0.

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "prhs/centralizer.hpp"
#include "prhs/examples.hpp"
#include "prhs/random.hpp"

namespace prhs {

struct SearchConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  Matrix gram_w;  // integer, non-degenerate, (n−2k)×(n−2k)
  std::int64_t entry_bound = 3;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool include_gamma44_pair = false;  // first trial uses the gamma44 B-blocks (n=8, k=2, G_W = Ĩ only)
  std::size_t shards = 1;
  std::size_t keep_admissible = 8;  // admissible pairs retained per shard for promotion
  std::size_t keep_witnesses = 16;
};

/// Balanced diagonal ±1 form, positives first.
inline Matrix balanced_gram(std::size_t m) {
  Matrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) g(i, i) = i < (m + 1) / 2 ? 1 : -1;
  return g;
}

inline SearchConfig make_search_config(std::size_t n, std::size_t k, std::uint64_t trials, std::uint64_t seed,
                                       std::int64_t entry_bound = 3) {
  if (2 * k > n) throw InputError("k must satisfy 2k <= n");
  SearchConfig c;
  c.n = n;
  c.k = k;
  c.gram_w = n - 2 * k == 4 ? detail::signature_w() : balanced_gram(n - 2 * k);
  c.trials = trials;
  c.seed = seed;
  c.entry_bound = entry_bound;
  return c;
}

inline void validate(const SearchConfig& c) {
  if (c.trials == 0) throw InputError("trials must be positive");
  if (c.shards == 0) throw InputError("shards must be positive");
  if (c.entry_bound < 0 || c.entry_bound > 1000) throw InputError("entry bound must lie in [0, 1000]");
  if (2 * c.k > c.n) throw InputError("k must satisfy 2k <= n");
  const std::size_t m = c.n - 2 * c.k;
  if (c.gram_w.rows() != m || c.gram_w.cols() != m) throw InputError("gram_W must be (n-2k)x(n-2k)");
  if (!c.gram_w.all_integer()) throw InputError("search requires an integer gram_W");
  if (m > 0) ScalarProduct check(c.gram_w);  // symmetric and non-degenerate
}

/// B and C blocks of one generator log.
struct BlockPair {
  Matrix b1, c1, b2, c2;

  friend bool operator==(const BlockPair&, const BlockPair&) = default;
  friend bool operator<(const BlockPair& x, const BlockPair& y) {
    if (!(x.b1 == y.b1)) return x.b1 < y.b1;
    if (!(x.c1 == y.c1)) return x.c1 < y.c1;
    if (!(x.b2 == y.b2)) return x.b2 < y.b2;
    return x.c2 < y.c2;
  }
};

struct Witness {
  BlockPair blocks;
  std::uint64_t shard = 0;
  std::uint64_t trial = 0;
  bool gamma44_pair = false;
  bool reverified = false;  // Wolf-valid in exact arithmetic and A1 A2 ≠ 0

  friend bool operator<(const Witness& x, const Witness& y) {
    if (!(x.blocks == y.blocks)) return x.blocks < y.blocks;
    if (x.shard != y.shard) return x.shard < y.shard;
    return x.trial < y.trial;
  }
};

struct SearchOutcome {
  std::size_t n = 0, k = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t admissible_pairs = 0;
  std::uint64_t nonabelian_pairs = 0;
  std::vector<Witness> witnesses;         // sorted; at most keep_witnesses per shard
  std::vector<BlockPair> admissible_sample;  // sorted
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  bool gamma44_pair_admissible = false;
  bool gamma44_pair_nonabelian = false;
};

namespace detail {

using IntMat = std::vector<std::int64_t>;  // row-major

struct IntBlocks {
  std::size_t m, k;
  IntMat b, c;  // b: m×k, c: k×k skew
};

inline Matrix to_matrix(const IntMat& v, std::size_t r, std::size_t c) {
  Matrix out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = Scalar(static_cast<long>(v[i * c + j]));
  return out;
}

inline IntMat from_matrix(const Matrix& m) {
  IntMat out;
  for (const auto& e : m.entries()) out.push_back(e.get_num().get_si());
  return out;
}

/// Pairing (B1ᵀ G B2)(i, j) over the integers.
inline IntMat pairing(const IntBlocks& x, const IntBlocks& y, const IntMat& g) {
  const std::size_t m = x.m, k = x.k;
  IntMat gb(m * k, 0), out(k * k, 0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      const auto grs = g[r * m + s];
      if (grs == 0) continue;
      for (std::size_t j = 0; j < k; ++j) gb[r * k + j] += grs * y.b[s * k + j];
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::int64_t acc = 0;
      for (std::size_t r = 0; r < m; ++r) acc += x.b[r * k + i] * gb[r * k + j];
      out[i * k + j] = acc;
    }
  return out;
}

inline bool all_zero(const IntMat& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

inline bool skew(const IntMat& v, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (v[i * k + j] != -v[j * k + i]) return false;
  return true;
}

/// Entries are zero with probability 1/2, else uniform in [−bound, bound].
/// Sparse draws hit isotropic columns far more often than uniform ones.
inline std::int64_t draw_entry(Rng& rng, std::int64_t bound) {
  return rng.uniform(0, 1) == 0 ? 0 : rng.uniform(-bound, bound);
}

inline IntBlocks draw_blocks(Rng& rng, std::size_t m, std::size_t k, std::int64_t bound) {
  IntBlocks x{m, k, IntMat(m * k), IntMat(k * k, 0)};
  for (auto& e : x.b) e = draw_entry(rng, bound);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      x.c[i * k + j] = draw_entry(rng, bound);
      x.c[j * k + i] = -x.c[i * k + j];
    }
  return x;
}

struct PairVerdict {
  bool admissible = false;
  bool nonabelian = false;
};

inline PairVerdict classify(const IntBlocks& x, const IntBlocks& y, const IntMat& g) {
  PairVerdict v;
  if (!all_zero(pairing(x, x, g)) || !all_zero(pairing(y, y, g))) return v;
  const IntMat p = pairing(x, y, g);
  if (!skew(p, x.k)) return v;
  v.admissible = true;
  v.nonabelian = !all_zero(p);
  return v;
}

}  // namespace detail

/// Frame-coordinate Gram matrix [[0,0,I],[0,G_W,0],[I,0,0]].
inline Matrix search_gram(const SearchConfig& c) { return detail::witt_gram(c.k, c.gram_w); }

/// The identity Witt frame the sampler works in.
inline WittFrame search_frame(const SearchConfig& c) { return WittFrame{c.k, Matrix::identity(c.n), c.gram_w}; }

inline AffineLog block_log(const SearchConfig& c, const Matrix& b, const Matrix& cc) {
  return {detail::block_log(c.k, b, cc, c.gram_w), zero_vector(c.n)};
}

/// Promotes a sampled pair to a two-generator group (zero translations). The
/// open-orbit hypothesis is asserted, not certified: the sampler only enforces
/// necessary conditions.
inline IsoGroup promote_pair(const SearchConfig& c, const BlockPair& p) {
  const ScalarProduct q(search_gram(c));
  const Matrix id = Matrix::identity(c.n);
  return IsoGroup(q,
                  {AffineIsometry{id + block_log(c, p.b1, p.c1).nilpart, zero_vector(c.n)},
                   AffineIsometry{id + block_log(c, p.b2, p.c2).nilpart, zero_vector(c.n)}},
                  Hypothesis::asserted);
}

/// Exact re-check of a pair: both logs Wolf-valid, pairing skew, A1 A2 ≠ 0.
inline bool reverify_witness(const SearchConfig& c, const BlockPair& p) {
  const ScalarProduct q(search_gram(c));
  const auto a1 = block_log(c, p.b1, p.c1);
  const auto a2 = block_log(c, p.b2, p.c2);
  return wolf_check(a1.nilpart, a1.translation, q).overall() && wolf_check(a2.nilpart, a2.translation, q).overall() &&
         !(a1.nilpart * a2.nilpart).is_zero();
}

/// One draw; nullopt when the pair fails a filter.
inline std::optional<BlockPair> sample_admissible_pair(const SearchConfig& c, Rng& rng) {
  const std::size_t m = c.n - 2 * c.k;
  const auto g = detail::from_matrix(c.gram_w);
  const auto x = detail::draw_blocks(rng, m, c.k, c.entry_bound);
  const auto y = detail::draw_blocks(rng, m, c.k, c.entry_bound);
  if (!detail::classify(x, y, g).admissible) return std::nullopt;
  return BlockPair{detail::to_matrix(x.b, m, c.k), detail::to_matrix(x.c, c.k, c.k), detail::to_matrix(y.b, m, c.k),
                   detail::to_matrix(y.c, c.k, c.k)};
}

inline bool gamma44_pair_applies(const SearchConfig& c) {
  return c.include_gamma44_pair && c.n == 8 && c.k == 2 && c.gram_w == detail::signature_w();
}

inline BlockPair gamma44_pair() {
  const auto ex = gamma44();
  return {ex.b[0], ex.c[0], ex.b[1], ex.c[1]};
}

namespace detail {

inline SearchOutcome run_shard(const SearchConfig& c, std::size_t shard, std::uint64_t begin, std::uint64_t end) {
  SearchOutcome out;
  out.n = c.n;
  out.k = c.k;
  out.seed = c.seed;
  const std::size_t m = c.n - 2 * c.k;
  const IntMat g = from_matrix(c.gram_w);
  Rng rng(c.seed ^ static_cast<std::uint64_t>(shard));
  auto record = [&](const IntBlocks& x, const IntBlocks& y, std::uint64_t trial, bool injected) {
    const auto v = classify(x, y, g);
    if (injected) {
      out.gamma44_pair_admissible = v.admissible;
      out.gamma44_pair_nonabelian = v.nonabelian;
    }
    if (!v.admissible) return;
    ++out.admissible_pairs;
    BlockPair p{to_matrix(x.b, m, c.k), to_matrix(x.c, c.k, c.k), to_matrix(y.b, m, c.k), to_matrix(y.c, c.k, c.k)};
    if (out.admissible_sample.size() < c.keep_admissible) out.admissible_sample.push_back(p);
    if (!v.nonabelian) return;
    ++out.nonabelian_pairs;
    if (out.witnesses.size() < c.keep_witnesses) {
      const bool ok = reverify_witness(c, p);
      out.witnesses.push_back(Witness{std::move(p), shard, trial, injected, ok});
    }
  };
  for (std::uint64_t t = begin; t < end; ++t) {
    ++out.trials_run;
    if (t == 0 && gamma44_pair_applies(c)) {
      const auto pp = gamma44_pair();
      record(IntBlocks{m, c.k, from_matrix(pp.b1), from_matrix(pp.c1)},
             IntBlocks{m, c.k, from_matrix(pp.b2), from_matrix(pp.c2)}, t, true);
      continue;
    }
    const auto x = draw_blocks(rng, m, c.k, c.entry_bound);
    const auto y = draw_blocks(rng, m, c.k, c.entry_bound);
    record(x, y, t, false);
  }
  return out;
}

}  // namespace detail

/// Merge by summation and sorted concatenation; associative and order-independent.
inline SearchOutcome merge(SearchOutcome a, const SearchOutcome& b) {
  a.trials_run += b.trials_run;
  a.admissible_pairs += b.admissible_pairs;
  a.nonabelian_pairs += b.nonabelian_pairs;
  a.witnesses.insert(a.witnesses.end(), b.witnesses.begin(), b.witnesses.end());
  std::sort(a.witnesses.begin(), a.witnesses.end());
  a.admissible_sample.insert(a.admissible_sample.end(), b.admissible_sample.begin(), b.admissible_sample.end());
  std::sort(a.admissible_sample.begin(), a.admissible_sample.end());
  a.gamma44_pair_admissible = a.gamma44_pair_admissible || b.gamma44_pair_admissible;
  a.gamma44_pair_nonabelian = a.gamma44_pair_nonabelian || b.gamma44_pair_nonabelian;
  return a;
}

/// Shard s covers trials [s·T/S, (s+1)·T/S) with seed ⊕ s. Shards run concurrently.
inline SearchOutcome falsification_run(const SearchConfig& c) {
  validate(c);
  std::vector<std::future<SearchOutcome>> parts;
  for (std::size_t s = 0; s < c.shards; ++s) {
    const std::uint64_t begin = c.trials * s / c.shards, end = c.trials * (s + 1) / c.shards;
    parts.push_back(std::async(c.shards == 1 ? std::launch::deferred : std::launch::async,
                               [&c, s, begin, end] { return detail::run_shard(c, s, begin, end); }));
  }
  SearchOutcome out;
  out.n = c.n;
  out.k = c.k;
  out.seed = c.seed;
  out.shards = c.shards;
  for (auto& p : parts) out = merge(std::move(out), p.get());
  return out;
}

/// One outcome per k = 0..⌊n/2⌋, each with the balanced form on W.
inline std::vector<SearchOutcome> falsification_all_splits(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                                           std::int64_t entry_bound = 3, std::size_t shards = 1) {
  std::vector<SearchOutcome> out;
  for (std::size_t k = 0; 2 * k <= n; ++k) {
    auto c = make_search_config(n, k, trials, seed, entry_bound);
    c.shards = shards;
    out.push_back(falsification_run(c));
  }
  return out;
}

struct FrontierRow {
  std::size_t n = 0;
  std::string source;
  std::size_t centralizer_dim = 0;
  bool closed_under_bracket = false;
  bool linear_parts_nilpotent = false;
  bool evaluation_surjective = false;
  std::optional<std::size_t> nilpotency_class;
  bool certified = false;
  std::string label = "EVIDENCE";
};

namespace detail {

inline FrontierRow frontier_row(std::size_t n, std::string source, const IsoGroup& g,
                                const std::optional<std::vector<AffineLog>>& candidate, std::uint64_t seed) {
  const auto c = centralizer_algebra(g);
  const auto t = transitivity_certificate(n, candidate ? *candidate : c.basis, seed);
  FrontierRow r;
  r.n = n;
  r.source = std::move(source);
  r.centralizer_dim = c.dim();
  r.closed_under_bracket = t.closed_under_bracket;
  r.linear_parts_nilpotent = t.linear_parts_nilpotent;
  r.evaluation_surjective = t.evaluation_surjective;
  r.nilpotency_class = t.nilpotency_class;
  r.certified = t.certified;
  return r;
}

/// gamma44 ⊕ R^{extra} with a balanced diagonal form on the extra summand.
inline IsoGroup gamma44_padded(std::size_t extra) {
  const auto ex = gamma44();
  const std::size_t n = 8 + extra;
  Matrix q(n, n);
  q.set_block(0, 0, ex.form.gram());
  if (extra) q.set_block(8, 8, balanced_gram(extra));
  std::vector<AffineIsometry> gens;
  for (const auto& x : ex.group.generators()) {
    Matrix l = Matrix::identity(n);
    l.set_block(0, 0, x.linear);
    Vector v = zero_vector(n);
    std::copy(x.translation.begin(), x.translation.end(), v.begin());
    gens.push_back({l, v});
  }
  return IsoGroup(ScalarProduct(q), gens);
}

}  // namespace detail

namespace detail {

/// Random rational isometry of G via the Cayley transform of a G-skew S = G⁻¹K.
inline Matrix random_isometry(const Matrix& g, Rng& rng) {
  const std::size_t m = g.rows();
  const Matrix gi = inverse(g);
  for (;;) {
    Matrix k(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        k(i, j) = Scalar(static_cast<long>(rng.uniform(-2, 2)));
        k(j, i) = -k(i, j);
      }
    const Matrix s = gi * k;
    const Matrix minus = Matrix::identity(m) - s;
    if (!is_invertible(minus)) continue;
    return inverse(minus) * (Matrix::identity(m) + s);
  }
}

inline Matrix random_invertible(std::size_t k, Rng& rng) {
  for (;;) {
    Matrix r(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) r(i, j) = Scalar(static_cast<long>(rng.uniform(-2, 2)));
    if (is_invertible(r)) return r;
  }
}

}  // namespace detail

/// A random non-abelian admissible pair in dimension n with dim U_0 = k ≥ 2 and
/// dim W ≥ 4: the gamma44 B-blocks padded by zeros, mixed by a random isometry
/// of G_W = Ĩ ⊕ balanced and a random invertible change of U_0 basis, with
/// random skew C blocks. Every filter is preserved by construction.
inline std::pair<SearchConfig, BlockPair> structured_nonabelian_pair(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 2 || 2 * k + 4 > n) throw InputError("structured non-abelian pairs need k >= 2 and n - 2k >= 4");
  const std::size_t m = n - 2 * k;
  SearchConfig c;
  c.n = n;
  c.k = k;
  c.gram_w = Matrix(m, m);
  c.gram_w.set_block(0, 0, detail::signature_w());
  if (m > 4) c.gram_w.set_block(4, 4, balanced_gram(m - 4));
  const auto pp = gamma44_pair();
  const Matrix p = detail::random_isometry(c.gram_w, rng);
  const Matrix r = detail::random_invertible(k, rng);
  auto mix = [&](const Matrix& b) {
    Matrix padded(m, k);
    padded.set_block(0, 0, b);
    return p * padded * r;
  };
  auto skew_c = [&] {
    Matrix cc(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        cc(i, j) = Scalar(static_cast<long>(rng.uniform(-3, 3)));
        cc(j, i) = -cc(i, j);
      }
    return cc;
  };
  BlockPair out{mix(pp.b1), skew_c(), mix(pp.b2), skew_c()};
  return {std::move(c), std::move(out)};
}

/// Transitivity certificates on non-abelian groups for n in [lo, hi] ∩ [8, 14].
/// For n < 14 the rows come from gamma44 padded by an orthogonal summand and
/// from `samples` structured random pairs with k = 2 (and k = 3 where it fits);
/// n = 14 uses gamma77 with its displayed 14-parameter family as candidate.
inline std::vector<FrontierRow> transitive_frontier_evidence(std::size_t lo, std::size_t hi, std::uint64_t seed,
                                                             std::size_t samples = 2) {
  std::vector<FrontierRow> rows;
  Rng rng(seed);
  for (std::size_t n = std::max<std::size_t>(lo, 8); n <= std::min<std::size_t>(hi, 14); ++n) {
    if (n == 14) {
      const auto ex = gamma77();
      rows.push_back(detail::frontier_row(n, "gamma77 displayed family", ex.group, ex.commuting_family, seed));
      continue;
    }
    rows.push_back(detail::frontier_row(n, n == 8 ? "gamma44" : "gamma44 + orthogonal summand",
                                        detail::gamma44_padded(n - 8), std::nullopt, seed));
    for (std::size_t k = 2; 2 * k + 4 <= n && k <= 3; ++k)
      for (std::size_t s = 0; s < samples; ++s) {
        const auto [c, pair] = structured_nonabelian_pair(n, k, rng);
        rows.push_back(detail::frontier_row(n, "structured random pair (k=" + std::to_string(k) + ")",
                                            promote_pair(c, pair), std::nullopt, seed));
      }
  }
  return rows;
}

}  // namespace prhs
