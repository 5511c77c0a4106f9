#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prhs/centralizer.hpp"
#include "prhs/examples.hpp"

using namespace prhs;

namespace {

// Centralizer dimension the long way: parametrize the isometry algebra as
// (G⁻¹S, t) with S skew, evaluate the brackets with each generator log on every
// parameter direction, and take the kernel of the resulting linear map.
std::size_t commutant_dim_by_brackets(const IsoGroup& g) {
  const std::size_t n = g.dim();
  const Matrix gi = inverse(g.form().gram());
  std::vector<AffineLog> params;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix s(n, n);
      s(i, j) = 1;
      s(j, i) = -1;
      params.push_back({gi * s, zero_vector(n)});
    }
  for (std::size_t i = 0; i < n; ++i) params.push_back({Matrix(n, n), unit_vector(n, i)});
  const auto logs = g.generator_logs();
  std::vector<Vector> cols;
  for (const auto& p : params) {
    Vector image;
    for (const auto& l : logs) {
      const auto b = flatten(bracket(p, l));
      image.insert(image.end(), b.begin(), b.end());
    }
    cols.push_back(image);
  }
  if (logs.empty()) return params.size();
  return params.size() - rank(Matrix::from_columns(cols.front().size(), cols));
}

bool is_infinitesimal_isometry(const AffineLog& l, const ScalarProduct& q) {
  return (q.gram() * l.nilpart + l.nilpart.transpose() * q.gram()).is_zero();
}

}  // namespace

TEST(Centralizer, TrivialGroupGivesWholeIsometryAlgebra) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const IsoGroup g(ScalarProduct(Matrix::identity(n)), {});
    EXPECT_EQ(centralizer_algebra(g).dim(), n * (n - 1) / 2 + n);
  }
}

TEST(Centralizer, ElementsCommuteAndPreserveTheForm) {
  for (const auto& name : example_names()) {
    const auto ex = build_example(name);
    const auto c = centralizer_algebra(ex.group);
    for (const auto& x : c.basis) {
      EXPECT_TRUE(is_infinitesimal_isometry(x, ex.form));
      for (const auto& l : ex.group.generator_logs()) EXPECT_EQ(bracket(x, l), AffineLog::zero(ex.form.dim()));
    }
  }
}

TEST(Centralizer, DimensionsAgreeWithBracketParametrization) {
  const auto e44 = gamma44();
  const auto c44 = centralizer_algebra(e44.group);
  EXPECT_EQ(c44.dim(), commutant_dim_by_brackets(e44.group));
  EXPECT_EQ(c44.dim(), 12u);
  const auto e77 = gamma77();
  const auto c77 = centralizer_algebra(e77.group);
  EXPECT_EQ(c77.dim(), commutant_dim_by_brackets(e77.group));
  EXPECT_EQ(c77.dim(), 32u);
}

TEST(Centralizer, RandomUnipotentGroupsAgree) {
  Rng rng(41);
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 3;
    const IsoGroup g(ScalarProduct(Matrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}),
                     {AffineIsometry::translation_by(oracle::random_int_matrix(rng, n, 1, 2).column(0))});
    EXPECT_EQ(centralizer_algebra(g).dim(), commutant_dim_by_brackets(g));
  }
}

TEST(Centralizer, ContainsDisplayedFamilies) {
  for (const auto& name : example_names()) {
    const auto ex = build_example(name);
    const auto c = centralizer_algebra(ex.group);
    for (const auto& f : ex.commuting_family) EXPECT_TRUE(c.contains(f)) << name;
  }
}

TEST(Centralizer, RejectsNonUnipotent) {
  const IsoGroup g(ScalarProduct(Matrix::identity(2)), {AffineIsometry{Matrix{{0, -1}, {1, 0}}, zero_vector(2)}});
  EXPECT_THROW(centralizer_algebra(g), PreconditionError);
}

TEST(Orbit, Gamma44OpenAtOriginNotAtE7) {
  const auto ex = gamma44();
  const auto c = centralizer_algebra(ex.group);
  const auto at0 = orbit_dimension(c, zero_vector(8));
  EXPECT_EQ(at0.orbit_dim, 8u);
  EXPECT_TRUE(at0.open);
  const auto at7 = orbit_dimension(c, unit_vector(8, 6));
  EXPECT_LT(at7.orbit_dim, 8u);
  EXPECT_FALSE(at7.open);
}

TEST(Orbit, BasepointDimensionChecked) {
  const auto ex = gamma44();
  EXPECT_THROW(orbit_dimension(centralizer_algebra(ex.group), zero_vector(3)), InputError);
}

TEST(Probes, OriginUnitsAndSeeded) {
  const auto p = probe_points(4, 9);
  ASSERT_EQ(p.size(), 4u + 6u);
  EXPECT_TRUE(is_zero(p[0]));
  EXPECT_EQ(p[3], unit_vector(4, 2));
  EXPECT_EQ(probe_points(4, 9), p);
  EXPECT_NE(probe_points(4, 10), p);
}

TEST(Transitivity, Gamma77FamilyIsCertified) {
  const auto ex = gamma77();
  ASSERT_EQ(ex.commuting_family.size(), 14u);
  const auto t = transitivity_certificate(14, ex.commuting_family, 42);
  EXPECT_TRUE(t.closed_under_bracket);
  EXPECT_TRUE(t.linear_parts_nilpotent);
  ASSERT_TRUE(t.nilpotency_class);
  EXPECT_EQ(*t.nilpotency_class, 3u);
  EXPECT_TRUE(t.evaluation_surjective);
  EXPECT_TRUE(t.certified);
  EXPECT_EQ(t.orbit_dims.size(), 20u);
}

TEST(Transitivity, FullCommutantOfGamma44IsNotUnipotent) {
  const auto ex = gamma44();
  const auto t = transitivity_certificate(centralizer_algebra(ex.group), 42);
  EXPECT_TRUE(t.closed_under_bracket);
  EXPECT_FALSE(t.linear_parts_nilpotent);
  EXPECT_FALSE(t.certified);
}

TEST(NilpotencyClass, SmallCases) {
  // Translations: abelian, class 1.
  std::vector<AffineLog> tr{{Matrix(2, 2), unit_vector(2, 0)}, {Matrix(2, 2), unit_vector(2, 1)}};
  EXPECT_EQ(nilpotency_class(2, tr), 1u);
  EXPECT_EQ(nilpotency_class(2, {}), 0u);
  // Heisenberg: x ↦ (0, x1) linear plus translation e1, whose bracket is the translation e2.
  Matrix n(2, 2);
  n(1, 0) = 1;
  std::vector<AffineLog> heis{{n, zero_vector(2)}, {Matrix(2, 2), unit_vector(2, 0)}, {Matrix(2, 2), unit_vector(2, 1)}};
  EXPECT_TRUE(closed_under_bracket(2, heis));
  EXPECT_EQ(nilpotency_class(2, heis), 2u);
  // Rotation generator acting on translations never terminates.
  std::vector<AffineLog> euc{{Matrix{{0, -1}, {1, 0}}, zero_vector(2)}, tr[0], tr[1]};
  EXPECT_FALSE(nilpotency_class(2, euc));
  EXPECT_FALSE(linear_parts_nilpotent(2, euc));
}

TEST(Properness, Examples) {
  const auto e77 = gamma77();
  const auto c77 = centralizer_algebra(e77.group);
  const auto t = transitivity_certificate(14, e77.commuting_family, 42);
  const auto p = properness_certificate(e77.group, c77, t, 42);
  EXPECT_TRUE(p.group_closed);
  EXPECT_EQ(p.closed_justification, "integer-unipotent");
  EXPECT_EQ(p.orbit_condition, "transitive");
  EXPECT_EQ(p.verdict, ProperVerdict::proper_on_space);

  const auto e44 = gamma44();
  const auto c44 = centralizer_algebra(e44.group);
  const auto p44 = properness_certificate(e44.group, c44, std::nullopt, 42);
  EXPECT_EQ(p44.orbit_condition, "open-orbit-preserved");
  EXPECT_EQ(p44.verdict, ProperVerdict::proper_on_open_orbits);
  const auto cert = certify_open_orbit(e44.group, c44, 42);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->first.hypothesis(), Hypothesis::certified);
}
