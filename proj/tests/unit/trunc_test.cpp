#include <gtest/gtest.h>

#include "generators.hpp"
#include "krd/error.hpp"
#include "oracles.hpp"

namespace krd {
namespace {

using testing::Rng;

const MPoly x = MPoly::var(Var::x), z = MPoly::var(Var::z), t = MPoly::var(Var::t), s = MPoly::var(Var::s);

TEST(Truncate, Examples) {
  const MPoly r0 = z.pow(2) + t.pow(3);
  const TruncElem a = truncate(r0 + x.pow(3) * (z + 7), 3);
  EXPECT_EQ(a.coeff(0), r0);
  EXPECT_TRUE(a.coeff(1).is_zero());
  EXPECT_TRUE(a.coeff(2).is_zero());

  const TruncElem b = truncate(x + x.pow(2) + x * z.pow(2) + x * t.pow(3), 2);
  EXPECT_EQ(b.to_poly(), x * (1 + z.pow(2) + t.pow(3)));
  EXPECT_TRUE(truncate(MPoly(), 4).is_zero());
  EXPECT_THROW(truncate(MPoly::var(Var::y), 2), InvalidArgument);
  EXPECT_THROW(truncate(s, 2), InvalidArgument);
  EXPECT_EQ(truncate_with_parameter(s * x, 2).coeff(1), s);
}

TEST(Truncate, Valuation) {
  EXPECT_EQ(truncate(x.pow(2) * z, 4).valuation(), 2);
  EXPECT_FALSE(truncate(x.pow(4), 4).valuation().has_value());
}

TEST(UnitInverse, Examples) {
  EXPECT_EQ(unit_inverse(truncate(1 + x, 2)), truncate(1 - x, 2));
  EXPECT_EQ(unit_inverse(truncate(1 + x, 3)), truncate(1 - x + x.pow(2), 3));
  // 1 - x f with f = -1
  EXPECT_EQ(unit_inverse(truncate(1 - x * MPoly(-1), 2)), truncate(1 - x, 2));
  EXPECT_THROW(unit_inverse(truncate(x, 2)), NotAUnit);
  EXPECT_THROW(unit_inverse(truncate(1 + z, 2)), NotAUnit);
}

TEST(Membership, Examples) {
  const MPoly r0 = z * (z * t.pow(2) + 1);
  const TruncElem G = truncate(r0, 2);
  auto res = ideal_membership(truncate((1 - 2 * x * t) * r0, 2), G);
  ASSERT_TRUE(std::holds_alternative<MembershipCofactor>(res));
  EXPECT_EQ(std::get<MembershipCofactor>(res).b, truncate(1 - 2 * x * t, 2));

  auto self = ideal_membership(G, G);
  ASSERT_TRUE(std::holds_alternative<MembershipCofactor>(self));
  EXPECT_EQ(std::get<MembershipCofactor>(self).b, TruncElem::one(2));

  auto no = ideal_membership(truncate(z, 2), truncate(z.pow(2) + t.pow(3), 2));
  ASSERT_TRUE(std::holds_alternative<NotMember>(no));
  EXPECT_EQ(std::get<NotMember>(no).order, 0);
}

TEST(Membership, WithParameter) {
  const MPoly r0 = z.pow(2) + t.pow(3);
  const TruncElem G = truncate(r0 + x, 2);
  auto same = membership_with_parameter(G, G);
  ASSERT_TRUE(std::holds_alternative<MembershipCofactor>(same));
  EXPECT_EQ(std::get<MembershipCofactor>(same).b, TruncElem::one(2));

  // exp(s x Jac(z, .)) maps t to t + s x; the level-1 residue 3 s t^2 is not a multiple of r0.
  const TruncElem moved = truncate_with_parameter(r0 + x + 3 * s * x * t.pow(2), 2);
  auto no = membership_with_parameter(moved, G);
  ASSERT_TRUE(std::holds_alternative<NotMember>(no));
  EXPECT_EQ(std::get<NotMember>(no).order, 1);
  EXPECT_THROW(membership_with_parameter(G, moved), InvalidArgument);
}

class TruncProperties : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  Rng rng{GetParam()};
};

TEST_P(TruncProperties, UnitInverseIsInverse) {
  for (int iter = 0; iter < 40; ++iter) {
    const int d = static_cast<int>(testing::uniform(rng, 1, 6));
    const TruncElem u = testing::random_unit(rng, d);
    EXPECT_EQ(unit_inverse(u) * u, TruncElem::one(d));
  }
}

TEST_P(TruncProperties, MembershipFindsPlantedCofactor) {
  for (int iter = 0; iter < 20; ++iter) {
    const int d = static_cast<int>(testing::uniform(rng, 2, 4));
    const std::array<CurveExponents, 3> params{CurveExponents(2, 3), CurveExponents(2, 5), CurveExponents(3, 4)};
    const CurveExponents kl = params[static_cast<std::size_t>(testing::uniform(rng, 0, 2))];
    const TruncElem G = truncate(kl.r0() + x * testing::random_g(rng, d, kl), d);
    const TruncElem b1 = testing::random_trunc(rng, d, 3, 3), b2 = testing::random_trunc(rng, d, 3, 3);

    auto r1 = ideal_membership(b1 * G, G);
    ASSERT_TRUE(std::holds_alternative<MembershipCofactor>(r1));
    EXPECT_EQ(std::get<MembershipCofactor>(r1).b * G, b1 * G);

    auto r12 = ideal_membership(b1 * G + b2 * G, G);
    auto r2 = ideal_membership(b2 * G, G);
    ASSERT_TRUE(std::holds_alternative<MembershipCofactor>(r12));
    EXPECT_EQ(std::get<MembershipCofactor>(r12).b,
              std::get<MembershipCofactor>(r1).b + std::get<MembershipCofactor>(r2).b);
  }
}

TEST_P(TruncProperties, NotMemberAgreesWithBruteForce) {
  int rejected = 0;
  for (int iter = 0; iter < 15; ++iter) {
    const int d = static_cast<int>(testing::uniform(rng, 1, 3));
    const CurveExponents kl(2, 3);
    const TruncElem G = truncate(kl.r0() + x * testing::random_zt(rng, 2, 2), d);
    TruncElem T = testing::random_trunc(rng, d, 3, 3);
    if (testing::uniform(rng, 0, 1) == 1) T = testing::random_trunc(rng, d, 2, 2) * G;
    auto res = ideal_membership(T, G);
    int bound = 0;
    for (int m = 0; m < d; ++m) bound = std::max(bound, T.coeff(m).degree() + G.coeff(m).degree());
    auto brute = testing::brute_force_cofactor(T, G, std::max(bound, 0));
    if (std::holds_alternative<NotMember>(res)) {
      ++rejected;
      EXPECT_FALSE(brute.has_value());
    } else {
      ASSERT_TRUE(brute.has_value());
      EXPECT_EQ(*brute, std::get<MembershipCofactor>(res).b);
    }
  }
  EXPECT_GT(rejected, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TruncProperties, ::testing::Values(11u, 12u, 13u, 14u, 15u));

}  // namespace
}  // namespace krd
