#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prhs/examples.hpp"

using namespace prhs;

namespace {

Matrix q44() { return gamma44().form.gram(); }

std::vector<Vector> units(std::size_t n, std::size_t from, std::size_t to) {
  std::vector<Vector> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(unit_vector(n, i));
  return v;
}

}  // namespace

TEST(Scalar, ParseAndFormat) {
  EXPECT_EQ(parse_scalar("3/6"), make_scalar(1, 2));
  EXPECT_EQ(parse_scalar("-4"), Scalar(-4));
  EXPECT_EQ(format_scalar(make_scalar(-6, 4)), "-3/2");
  EXPECT_EQ(format_scalar(Scalar(7)), "7");
  EXPECT_THROW(parse_scalar("1/0"), InputError);
  EXPECT_THROW(parse_scalar("x"), InputError);
  EXPECT_THROW(parse_scalar(""), InputError);
}

TEST(RankImageKernel, ZeroMatrix) {
  const auto r = rank_image_kernel(Matrix(4, 4));
  EXPECT_EQ(r.rank, 0u);
  EXPECT_TRUE(r.image.is_zero());
  EXPECT_TRUE(r.kernel.is_full());
}

TEST(RankImageKernel, Identity) {
  const auto r = rank_image_kernel(Matrix::identity(5));
  EXPECT_EQ(r.rank, 5u);
  EXPECT_TRUE(r.image.is_full());
  EXPECT_TRUE(r.kernel.is_zero());
}

TEST(RankImageKernel, Gamma44GeneratorHasRankFour) {
  const Matrix a1 = gamma44().group.generators()[0].nilpart();
  EXPECT_EQ(rank(a1), 4u);
  EXPECT_EQ(oracle::rank_by_minors(a1), 4u);
  EXPECT_EQ(rank_image_kernel(a1).kernel.dim(), 4u);
}

TEST(RankImageKernel, RankNullityAgainstMinors) {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 1 + rng.uniform(0, 3), c = 1 + rng.uniform(0, 3);
    Matrix m = oracle::random_int_matrix(rng, r, c, 2);
    if (t % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) + m(1 % r, j);
    const auto rik = rank_image_kernel(m);
    EXPECT_EQ(rik.rank, oracle::rank_by_minors(m));
    EXPECT_EQ(rik.rank + rik.kernel.dim(), c);
    for (const auto& k : rik.kernel.basis()) EXPECT_TRUE(is_zero(m * k));
  }
}

TEST(SolveAffine, ZeroSystem) {
  const auto s = solve_affine(Matrix(3, 3), zero_vector(3));
  ASSERT_TRUE(s);
  EXPECT_TRUE(is_zero(s->particular));
  EXPECT_TRUE(s->kernel.is_full());
  EXPECT_FALSE(solve_affine(Matrix(3, 3), unit_vector(3, 1)));
}

TEST(SolveAffine, CommutatorBlockOfGamma44) {
  const Matrix c3{{0, -4}, {4, 0}};
  const auto s = solve_affine(c3, int_vector({0, 4}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, int_vector({1, 0}));
  EXPECT_TRUE(s->kernel.is_zero());
}

TEST(SolveAffine, DimensionMismatch) { EXPECT_THROW(solve_affine(Matrix(2, 3), zero_vector(3)), InputError); }

TEST(Inertia, Examples) {
  const auto d = inertia(Matrix{{1, 0}, {0, -1}});
  EXPECT_EQ(d.positive, 1u);
  EXPECT_EQ(d.negative, 1u);
  const auto h = inertia(Matrix{{0, 1}, {1, 0}});
  EXPECT_EQ(h.positive, 1u);
  EXPECT_EQ(h.negative, 1u);
  EXPECT_EQ(h.zero, 0u);
  const auto q = inertia(q44());
  EXPECT_EQ(q.positive, 4u);
  EXPECT_EQ(q.negative, 4u);
  EXPECT_EQ(q.zero, 0u);
  EXPECT_THROW(inertia(Matrix{{0, 1}, {0, 0}}), InputError);
}

TEST(Inertia, MatchesCharacteristicPolynomialOracle) {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng.uniform(0, 4);
    const Matrix g = oracle::random_symmetric(rng, n, 2);
    const auto got = inertia(g);
    const auto want = oracle::inertia(g);
    EXPECT_EQ(got.positive, want[0]) << g;
    EXPECT_EQ(got.negative, want[1]) << g;
    EXPECT_EQ(got.zero, want[2]) << g;
  }
}

TEST(Inertia, CongruenceInvariant) {
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.uniform(0, 3);
    const Matrix g = oracle::random_symmetric(rng, n, 3);
    const Matrix p = oracle::random_invertible(rng, n, 2);
    const auto a = inertia(g), b = inertia(p.transpose() * g * p);
    EXPECT_EQ(a.positive, b.positive);
    EXPECT_EQ(a.negative, b.negative);
    EXPECT_EQ(a.zero, b.zero);
  }
}

TEST(ScalarProduct, RejectsDegenerateOrAsymmetric) {
  EXPECT_THROW(ScalarProduct(Matrix{{1, 0}, {0, 0}}), InputError);
  EXPECT_THROW(ScalarProduct(Matrix{{1, 1}, {0, 1}}), InputError);
}

TEST(OrthogonalComplement, Examples) {
  const ScalarProduct q(q44());
  EXPECT_TRUE(orthogonal_complement(Subspace::zero(8), q).is_full());
  EXPECT_TRUE(orthogonal_complement(Subspace::full(8), q).is_zero());
  const auto u = Subspace::span(8, units(8, 0, 2));
  // ⟨x, e1⟩ = x7 and ⟨x, e2⟩ = x8 for this Gram matrix.
  EXPECT_EQ(orthogonal_complement(u, q), Subspace::span(8, units(8, 0, 6)));
}

TEST(OrthogonalComplement, InvolutionAndDimension) {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.uniform(0, 3);
    Matrix g = oracle::random_symmetric(rng, n, 3);
    if (oracle::det(g) == 0) continue;
    const ScalarProduct q(g);
    const std::size_t k = rng.uniform(0, static_cast<std::int64_t>(n));
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < k; ++i) vs.push_back(oracle::random_int_matrix(rng, n, 1, 2).column(0));
    const auto u = Subspace::span(n, vs);
    const auto perp = orthogonal_complement(u, q);
    EXPECT_EQ(perp.dim(), n - u.dim());
    EXPECT_EQ(orthogonal_complement(perp, q), u);
    for (const auto& x : perp.basis())
      for (const auto& y : u.basis()) EXPECT_EQ(q(x, y), 0);
  }
}

TEST(Isotropy, Examples) {
  const ScalarProduct q(q44());
  EXPECT_TRUE(is_totally_isotropic(Subspace::zero(8), q));
  EXPECT_TRUE(is_totally_isotropic(Subspace::span(8, units(8, 0, 2)), q));
  EXPECT_FALSE(is_totally_isotropic(Subspace::span(8, units(8, 2, 3)), q));
}

TEST(WittFrame, NativeFrameOfGamma44) {
  const ScalarProduct q(q44());
  const auto f = witt_frame(Subspace::span(8, units(8, 0, 2)), q);
  EXPECT_EQ(f.k, 2u);
  EXPECT_EQ(f.basis_change, Matrix::identity(8));
  EXPECT_EQ(f.gram_w, (Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
  EXPECT_TRUE(f.valid_for(q));
}

TEST(WittFrame, HyperbolicPlane) {
  const ScalarProduct q(Matrix{{1, 0}, {0, -1}});
  const auto f = witt_frame(Subspace::span(2, {int_vector({1, 1})}), q);
  EXPECT_EQ(f.k, 1u);
  EXPECT_EQ(f.w_dim(), 0u);
  EXPECT_EQ(f.basis_change.column(0), int_vector({1, 1}));
  EXPECT_EQ(f.basis_change.column(1), (Vector{make_scalar(1, 2), make_scalar(-1, 2)}));
  const Vector u = f.basis_change.column(0), us = f.basis_change.column(1);
  EXPECT_EQ(q(u, u), 0);
  EXPECT_EQ(q(u, us), 1);
  EXPECT_EQ(q(us, us), 0);
}

TEST(WittFrame, ZeroSubspace) {
  const ScalarProduct q(Matrix{{2, 1}, {1, -3}});
  const auto f = witt_frame(Subspace::zero(2), q);
  EXPECT_EQ(f.k, 0u);
  const auto a = inertia(f.gram_w), b = q.signature();
  EXPECT_EQ(a.positive, b.positive);
  EXPECT_EQ(a.negative, b.negative);
}

TEST(WittFrame, RejectsNonIsotropic) {
  const ScalarProduct q(Matrix{{1, 0}, {0, -1}});
  EXPECT_THROW(witt_frame(Subspace::span(2, {int_vector({1, 0})}), q), PreconditionError);
}

// Random forms P^T [[0,0,I],[0,D,0],[I,0,0]] P with U0 = P^{-1} span(e_1..e_k).
TEST(WittFrame, GramIdentitiesOnRandomInputs) {
  Rng rng(14);
  for (int t = 0; t < 25; ++t) {
    const std::size_t k = 1 + rng.uniform(0, 1), m = rng.uniform(0, 3), n = 2 * k + m;
    Matrix split(n, n);
    split.set_block(0, k + m, Matrix::identity(k));
    split.set_block(k + m, 0, Matrix::identity(k));
    for (std::size_t i = 0; i < m; ++i) split(k + i, k + i) = rng.uniform(0, 1) ? 1 : -2;
    const Matrix p = oracle::random_invertible(rng, n, 1);
    const ScalarProduct q(p.transpose() * split * p);
    const Matrix pi = inverse(p);
    std::vector<Vector> u;
    for (std::size_t i = 0; i < k; ++i) u.push_back(pi * unit_vector(n, i));
    const auto f = witt_frame(Subspace::span(n, u), q);
    ASSERT_TRUE(f.valid_for(q));
    const Matrix tg = f.transformed_gram(q);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        EXPECT_EQ(tg(i, j), 0);
        EXPECT_EQ(tg(k + m + i, k + m + j), 0);
        EXPECT_EQ(tg(i, k + m + j), i == j ? 1 : 0);
      }
    EXPECT_NE(oracle::det(f.gram_w.rows() ? f.gram_w : Matrix::identity(1)), 0);
  }
}
