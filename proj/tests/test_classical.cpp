#include <gtest/gtest.h>

#include <algorithm>

#include "qgame/classical.hpp"
#include "test_support.hpp"

namespace qgame {
namespace {

const PayoffMatrix kStag = normalized_exemplar(GameFamily::StagHunt);
const PayoffMatrix kChicken = normalized_exemplar(GameFamily::Chicken);
const PayoffMatrix kPd = normalized_exemplar(GameFamily::PrisonersDilemma);

double classical_gain(const PayoffMatrix& m, const StrategyProfile& s) {
  return testing::grid_best_deviation_gain(
      [&](const StrategyProfile& t) { return classical_payoffs(m, t); }, s,
      1001);
}

bool has_profile(const std::vector<NashEquilibrium>& eqs, double p, double q,
                 double tol = 1e-12) {
  return std::any_of(eqs.begin(), eqs.end(), [&](const NashEquilibrium& e) {
    return std::abs(e.profile.p - p) <= tol && std::abs(e.profile.q - q) <= tol;
  });
}

TEST(ClassicalPayoffs, Corners) {
  const auto cc = classical_payoffs(kStag, {1, 1});
  EXPECT_DOUBLE_EQ(cc.A, 1.0);
  EXPECT_DOUBLE_EQ(cc.B, 1.0);
  const auto dd = classical_payoffs(kStag, {0, 0});
  EXPECT_NEAR(dd.A, 1.0 / 3, 1e-15);
  EXPECT_NEAR(dd.B, 1.0 / 3, 1e-15);
  // Alice C, Bob D: (d, b).
  const auto cd = classical_payoffs(kStag, {1, 0});
  EXPECT_NEAR(cd.A, 0.0, 1e-15);
  EXPECT_NEAR(cd.B, 2.0 / 3, 1e-15);
}

TEST(ClassicalPayoffs, UniformMixIsMeanPayoff) {
  // (a + b + c + d) / 4 = 2 / 4
  const auto half = classical_payoffs(kStag, {0.5, 0.5});
  EXPECT_NEAR(half.A, 0.5, 1e-15);
  EXPECT_NEAR(half.B, 0.5, 1e-15);
}

TEST(ClassicalPayoffs, PlayerSwapSymmetry) {
  testing::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto m = testing::random_matrix(rng);
    const auto s = testing::random_profile(rng);
    // Player exchange, and the b <-> d relabelling that turns B into A.
    EXPECT_NEAR(classical_payoffs(m, s).A, classical_payoffs(m, s.swapped()).B,
                1e-12);
    EXPECT_NEAR(classical_payoffs(m, s).B, classical_payoffs(swap_bd(m), s).A,
                1e-12);
  }
}

TEST(ClassicalPayoffs, AffineInOwnProbability) {
  testing::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto m = testing::random_matrix(rng);
    const double q = testing::random_profile(rng).q;
    const double f0 = classical_payoffs(m, {0.0, q}).A;
    const double fh = classical_payoffs(m, {0.5, q}).A;
    const double f1 = classical_payoffs(m, {1.0, q}).A;
    EXPECT_NEAR(fh, 0.5 * (f0 + f1), 1e-12);
  }
}

TEST(ClassicalDelta, MatchesPayoffDifferences) {
  EXPECT_NEAR(classical_delta(kStag, {1, 1}, {0, 1}).A, 1.0 / 3, 1e-15);
  EXPECT_NEAR(classical_delta(kStag, {0, 0}, {1, 0}).A, 1.0 / 3, 1e-15);
  const auto zero = classical_delta(kStag, {0.3, 0.6}, {0.3, 0.6});
  EXPECT_EQ(zero.A, 0.0);
  EXPECT_EQ(zero.B, 0.0);

  testing::Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const auto m = testing::random_matrix(rng);
    const auto star = testing::random_profile(rng);
    const auto dev = testing::random_profile(rng);
    const auto delta = classical_delta(m, star, dev);
    EXPECT_NEAR(delta.A,
                classical_payoffs(m, star).A -
                    classical_payoffs(m, {dev.p, star.q}).A,
                1e-12);
    EXPECT_NEAR(delta.B,
                classical_payoffs(m, star).B -
                    classical_payoffs(m, {star.p, dev.q}).B,
                1e-12);
  }
}

TEST(ClassicalMixedM, Values) {
  EXPECT_NEAR(classical_mixed_m(kStag), 0.5, 1e-15);
  EXPECT_NEAR(classical_mixed_m({1.0, 0.6, 0.3, 0.0}), 3.0 / 7.0, 1e-15);
  EXPECT_THROW(classical_mixed_m({1.0, 1.0 + 1e-15, 0.0, 1e-15}),
               DegenerateDenominator);
}

TEST(ClassicalMixedM, IsAGridVerifiedEquilibrium) {
  for (const PayoffMatrix& m : {kStag, PayoffMatrix{1.0, 0.6, 0.3, 0.0}}) {
    const double mm = classical_mixed_m(m);
    EXPECT_LE(classical_gain(m, {mm, mm}), 1e-9);
  }
}

TEST(ClassicalNash, StagHuntExemplar) {
  const auto eqs = classical_nash_equilibria(kStag);
  ASSERT_EQ(eqs.size(), 3u);
  EXPECT_TRUE(has_profile(eqs, 1, 1));
  EXPECT_TRUE(has_profile(eqs, 0, 0));
  EXPECT_TRUE(has_profile(eqs, 0.5, 0.5));
  for (const auto& e : eqs) {
    const double expected = e.profile.p == 1.0   ? 1.0
                            : e.profile.p == 0.0 ? 1.0 / 3
                                                 : 0.5;
    EXPECT_NEAR(e.payoffs.A, expected, 1e-12);
    EXPECT_NEAR(e.payoffs.B, expected, 1e-12);
    EXPECT_LE(classical_gain(kStag, e.profile), 1e-9);
  }
}

TEST(ClassicalNash, ChickenExemplar) {
  const auto eqs = classical_nash_equilibria(kChicken);
  ASSERT_EQ(eqs.size(), 3u);
  EXPECT_TRUE(has_profile(eqs, 1, 0));
  EXPECT_TRUE(has_profile(eqs, 0, 1));
  // (d - c) / (b + d - a - c) = (1/3) / (2/3)
  EXPECT_TRUE(has_profile(eqs, 0.5, 0.5));
  for (const auto& e : eqs) EXPECT_LE(classical_gain(kChicken, e.profile), 1e-9);
}

TEST(ClassicalNash, PrisonersDilemmaHasUniqueDefection) {
  const auto eqs = classical_nash_equilibria(kPd);
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_EQ(eqs[0].profile, (StrategyProfile{0, 0}));
  EXPECT_LE(classical_gain(kPd, eqs[0].profile), 1e-9);
  // Grid search: no other grid profile survives.
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      if (i == 0 && j == 0) continue;
      EXPECT_GT(classical_gain(kPd, {i / 20.0, j / 20.0}), 1e-9);
    }
  }
}

TEST(ClassicalNash, StagHuntOrderingChain) {
  // a = $(1,1) > b > $(m,m) > c = $(0,0) > d
  testing::Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const auto m = testing::random_stag_hunt(rng);
    const double mm = classical_mixed_m(m);
    const double pmm = classical_payoffs(m, {mm, mm}).A;
    EXPECT_NEAR(pmm, (m.a * m.c - m.b * m.d) / (m.a - m.b + m.c - m.d), 1e-12);
    EXPECT_GT(m.b, pmm);
    EXPECT_GT(pmm, m.c);
    EXPECT_NEAR(classical_payoffs(m, {1, 1}).A, m.a, 1e-12);
    EXPECT_NEAR(classical_payoffs(m, {0, 0}).A, m.c, 1e-12);
  }
}

TEST(ClassicalNash, RandomMatricesPassGridCheck) {
  testing::Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    const auto m = testing::random_matrix(rng);
    const auto eqs = classical_nash_equilibria(m);
    EXPECT_FALSE(eqs.empty());  // a 2x2 game always has one
    for (const auto& e : eqs) EXPECT_LE(classical_gain(m, e.profile), 1e-9);
  }
}

TEST(ClassicalNash, ContinuumWhenBothPlayersIndifferent) {
  // a = b and c = d: payoffs never depend on one's own choice.
  const auto eqs = classical_nash_equilibria({1.0, 1.0, 0.0, 0.0});
  ASSERT_FALSE(eqs.empty());
  const auto& last = eqs.back();
  EXPECT_EQ(last.kind, EquilibriumKind::Continuum);
  ASSERT_TRUE(last.continuum.has_value());
  EXPECT_EQ(last.continuum->axis, ContinuumAxis::Both);
}

TEST(ClassicalNash, EdgeContinuum) {
  // a = b leaves Alice indifferent against q = 1, and with d > c Bob's
  // bracket K(p) = (1 - p)(d - c) never goes negative: the whole edge q = 1
  // is an equilibrium segment.
  const PayoffMatrix m{1.0, 1.0, 0.0, 0.5};
  const auto eqs = classical_nash_equilibria(m);
  const auto seg = std::find_if(eqs.begin(), eqs.end(), [](const auto& e) {
    return e.kind == EquilibriumKind::Continuum;
  });
  ASSERT_NE(seg, eqs.end());
  EXPECT_EQ(seg->continuum->axis, ContinuumAxis::P);
  EXPECT_EQ(seg->profile.q, 1.0);
  EXPECT_DOUBLE_EQ(seg->continuum->lo, 0.0);
  EXPECT_DOUBLE_EQ(seg->continuum->hi, 1.0);
  for (int i = 0; i <= 10; ++i) {
    EXPECT_LE(classical_gain(m, {i / 10.0, 1.0}), 1e-9);
  }
}

}  // namespace
}  // namespace qgame
