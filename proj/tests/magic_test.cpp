#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qpg/magic.hpp"
#include "test_support.hpp"

namespace qpg {
namespace {

using testing::all_permutations;
using testing::random_magic4;
using testing::theta_grid;

constexpr double kPi = std::numbers::pi;

TEST(VerifyMagicUnitary, IdentityPermutationPasses) {
  const auto r = verify_magic_unitary(permutation_magic({1, 2, 3, 4}), Tolerance(0.0));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.metrics["max_violation"].get<double>(), 0.0);
}

TEST(VerifyMagicUnitary, TwoProjectionAtQuarterPi) {
  const auto r = verify_magic_unitary(build_two_projection_magic(kPi / 4), Tolerance(1e-12));
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.metrics["max_violation"].get<double>(), 1e-12);
}

TEST(VerifyMagicUnitary, BrokenRowSumFails) {
  const auto p = ComplexMatrix::diag({1.0, 0.0});
  const auto np = ComplexMatrix::diag({0.0, 1.0});
  const MagicUnitary u(2, 2, {p, p, np, np});
  const auto r = verify_magic_unitary(u);
  EXPECT_TRUE(r.failed());
  EXPECT_NEAR(r.metrics["row_sum_violation"].get<double>(), 1.0, 1e-15);
  EXPECT_EQ(r.metrics["column_sum_violation"].get<double>(), 0.0);
}

TEST(VerifyMagicUnitary, NonProjectionEntryFails) {
  const ComplexMatrix nil{{0.0, 1.0}, {0.0, 0.0}};
  const MagicUnitary u(1, 2, {nil});
  const auto r = verify_magic_unitary(u);
  EXPECT_TRUE(r.failed());
  EXPECT_GT(r.metrics["projection_violation"].get<double>(), 0.5);
}

TEST(VerifyMagicUnitary, ShapeInconsistencyIsStructural) {
  EXPECT_THROW(MagicUnitary(2, 1, {ComplexMatrix{{1.0}}}), StructuralError);
  EXPECT_THROW(MagicUnitary(1, 2, {ComplexMatrix{{1.0}}}), StructuralError);
  EXPECT_THROW(MagicUnitary(0, 1, {}), StructuralError);
}

TEST(DeltaRep, IdentityPermutationIsFixed) {
  const auto u = permutation_magic({1, 2, 3, 4});
  const auto du = delta_rep(u);
  EXPECT_EQ(du.d(), 1u);
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 4; ++j) EXPECT_EQ(du.entry(i, j), u.entry(i, j));
}

TEST(DeltaRep, ClassicalPermutationsMatchBruteForce) {
  for (const auto& sigma : all_permutations(3)) {
    const auto u = permutation_magic(sigma);
    const auto du = delta_rep(u);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = 1; j <= 3; ++j) {
        // Σ_k [σ(k)=i][σ(j)=k]
        double expected = 0.0;
        for (std::size_t k = 1; k <= 3; ++k)
          expected += (sigma[k - 1] == i ? 1.0 : 0.0) * (sigma[j - 1] == k ? 1.0 : 0.0);
        EXPECT_EQ(du.entry(i, j)(0, 0), Complex(expected)) << i << "," << j;
      }
  }
}

TEST(DeltaRep, TwoProjectionGivesValidFourDimensional) {
  const auto du = delta_rep(build_two_projection_magic(kPi / 4));
  EXPECT_EQ(du.d(), 4u);
  EXPECT_TRUE(verify_magic_unitary(du, Tolerance(1e-12)).passed());
}

TEST(BuildTwoProjection, CommutingCases) {
  const auto u0 = build_two_projection_magic(0.0);
  EXPECT_LE(max_diff(u0.entry(3, 3), ComplexMatrix::diag({1.0, 0.0})), 1e-15);
  EXPECT_EQ(commutator_norm(u0.entry(1, 1), u0.entry(3, 3)), 0.0);
  const auto u2 = build_two_projection_magic(kPi / 2);
  EXPECT_LE(max_diff(u2.entry(3, 3), ComplexMatrix::diag({0.0, 1.0})), 1e-15);
  EXPECT_LE(commutator_norm(u2.entry(1, 1), u2.entry(3, 3)), 1e-15);
}

TEST(BuildTwoProjection, QuarterPiCommutator) {
  const auto u = build_two_projection_magic(kPi / 4);
  const ComplexMatrix half{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_LE(max_diff(u.entry(3, 3), half), 1e-15);
  const auto& p = u.entry(1, 1);
  const auto& q = u.entry(3, 3);
  const ComplexMatrix expected{{0.0, 0.5}, {-0.5, 0.0}};
  EXPECT_LE(max_diff(p * q - q * p, expected), 1e-15);
  EXPECT_NEAR(commutator_norm(p, q), 0.5, 1e-12);
}

TEST(BuildTwoProjection, ValidOnThetaGrid) {
  for (double t : theta_grid())
    EXPECT_TRUE(verify_magic_unitary(build_two_projection_magic(t), Tolerance(1e-12)).passed()) << t;
}

TEST(BuildTwoProjection, CommutatorClosedForm) {
  for (double t : theta_grid()) {
    const auto u = build_two_projection_magic(t);
    EXPECT_NEAR(commutator_norm(u.entry(1, 1), u.entry(3, 3)), std::abs(std::sin(t) * std::cos(t)), 1e-12)
        << t;
  }
}

TEST(Genuineness, ScalarHasNone) {
  EXPECT_FALSE(genuineness_certificate(permutation_magic({2, 1, 4, 3})).has_value());
}

TEST(Genuineness, QuarterPiWitness) {
  const auto c = genuineness_certificate(build_two_projection_magic(kPi / 4));
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(c->commutator_norm, 0.5, 1e-12);
  EXPECT_EQ(c->first, IndexPair(1, 1));
  EXPECT_EQ(c->second, IndexPair(3, 3));
}

TEST(Genuineness, CommutingAnglesHaveNone) {
  EXPECT_FALSE(genuineness_certificate(build_two_projection_magic(0.0)).has_value());
  EXPECT_FALSE(genuineness_certificate(build_two_projection_magic(kPi / 2)).has_value());
}

TEST(Permutations, AllOfS4Pass) {
  for (const auto& s : all_permutations(4))
    EXPECT_TRUE(verify_magic_unitary(permutation_magic(s), Tolerance(1e-12)).passed());
}

TEST(Permutations, RejectsNonPermutation) {
  EXPECT_THROW(permutation_magic({1, 1, 2}), StructuralError);
  EXPECT_THROW(permutation_magic({1, 4, 2}), StructuralError);
}

TEST(DeltaRep, PreservesValidityOnRandomUnitaries) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto u = random_magic4(rng);
    ASSERT_TRUE(verify_magic_unitary(u).passed());
    EXPECT_TRUE(verify_magic_unitary(delta_rep(u)).passed());
  }
}

TEST(Orthogonality, ImpliedOnRandomValidUnitaries) {
  std::mt19937_64 rng(32);
  const Tolerance tol;
  for (int t = 0; t < 100; ++t) {
    const auto u = random_magic4(rng);
    const auto r = verify_magic_unitary(u, tol);
    const double base = std::max({r.metrics["projection_violation"].get<double>(),
                                  r.metrics["row_sum_violation"].get<double>(),
                                  r.metrics["column_sum_violation"].get<double>()});
    ASSERT_LE(base, tol.eps);
    EXPECT_LE(r.metrics["orthogonality_violation"].get<double>(), 10 * tol.eps);
  }
}

TEST(MagicJson, RoundTrip) {
  std::mt19937_64 rng(33);
  const auto u = random_magic4(rng);
  const auto back = magic_from_json(nlohmann::json::parse(to_json(u).dump()));
  ASSERT_EQ(back.n(), u.n());
  ASSERT_EQ(back.d(), u.d());
  EXPECT_EQ(back.entries(), u.entries());
}

TEST(MagicJson, GridIsZeroIndexedRowMajor) {
  const auto j = to_json(permutation_magic({2, 1}));
  EXPECT_EQ(j["entries"][1][0]["entries"][0][0].get<double>(), 1.0);
  EXPECT_EQ(j["entries"][0][0]["entries"][0][0].get<double>(), 0.0);
}

TEST(MagicJson, RejectsBadShapes) {
  auto j = to_json(build_two_projection_magic(0.3));
  j["d"] = 3;
  EXPECT_THROW(magic_from_json(j), StructuralError);
  auto k = to_json(build_two_projection_magic(0.3));
  k["entries"].erase(3);
  EXPECT_THROW(magic_from_json(k), StructuralError);
}

}  // namespace
}  // namespace qpg
