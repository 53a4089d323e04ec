#pragma once

// Symmetric 2x2 payoff bimatrix, family classification by strict payoff
// ordering, and the normalized exemplar of each family.
//
// Bimatrix layout (row player = Alice, column player = Bob):
//
//               Bob C     Bob D
//   Alice C    (a, a)    (d, b)
//   Alice D    (b, d)    (c, c)

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "qgame/error.hpp"

namespace qgame {

// Denominators at or below this magnitude are treated as zero.
inline constexpr double kDegenerateEps = 1e-12;

struct PayoffMatrix {
  double a = 0.0;  // (C, C)
  double b = 0.0;  // Alice defects against a cooperator
  double c = 0.0;  // (D, D)
  double d = 0.0;  // Alice cooperates against a defector

  bool is_finite() const noexcept {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
           std::isfinite(d);
  }

  // Throws InvalidArgument unless all four payoffs are finite.
  const PayoffMatrix& validated() const {
    if (!is_finite()) throw InvalidArgument("payoff values must be finite");
    return *this;
  }

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

// Exchanges b and d: the player-swap relabelling of the bimatrix.
constexpr PayoffMatrix swap_bd(const PayoffMatrix& m) noexcept {
  return {m.a, m.d, m.c, m.b};
}

enum class GameFamily {
  StagHunt,
  Chicken,
  Leader,
  SecretMeeting,
  PrisonersDilemma,
  Other,
};

constexpr std::string_view to_string(GameFamily f) noexcept {
  switch (f) {
    case GameFamily::StagHunt: return "StagHunt";
    case GameFamily::Chicken: return "Chicken";
    case GameFamily::Leader: return "Leader";
    case GameFamily::SecretMeeting: return "SecretMeeting";
    case GameFamily::PrisonersDilemma: return "PrisonersDilemma";
    case GameFamily::Other: return "Other";
  }
  return "Other";
}

inline constexpr std::array<GameFamily, 5> kNamedFamilies = {
    GameFamily::StagHunt, GameFamily::Chicken, GameFamily::Leader,
    GameFamily::SecretMeeting, GameFamily::PrisonersDilemma};

// Tactic probabilities: p for Alice, q for Bob, each the probability of
// playing the identity (cooperate-preserving) tactic.
struct StrategyProfile {
  double p = 1.0;
  double q = 1.0;

  constexpr StrategyProfile() = default;
  constexpr StrategyProfile(double p_, double q_) : p(p_), q(q_) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
      throw InvalidArgument("strategy probabilities must lie in [0, 1]");
    }
  }

  constexpr StrategyProfile swapped() const { return {q, p}; }

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
};

// Total: ties anywhere among the four payoffs yield Other.
inline GameFamily classify_family(const PayoffMatrix& m) {
  m.validated();
  const auto [a, b, c, d] = m;
  if (a > b && b > c && c > d) return GameFamily::StagHunt;
  if (b > a && a > d && d > c) return GameFamily::Chicken;
  if (b > d && d > a && a > c) return GameFamily::Leader;
  if (d > b && b > a && a > c) return GameFamily::SecretMeeting;
  if (b > a && a > c && c > d && b + d < 2.0 * a) {
    return GameFamily::PrisonersDilemma;
  }
  return GameFamily::Other;
}

// Largest -> 1, then 2/3, 1/3, 0 along the family's ordering. The Prisoner's
// Dilemma uses (b=1, a=5/6, c=1/3, d=0) since even spacing violates b+d<2a.
inline PayoffMatrix normalized_exemplar(GameFamily f) {
  constexpr double hi = 1.0, mid_hi = 2.0 / 3.0, mid_lo = 1.0 / 3.0, lo = 0.0;
  switch (f) {
    case GameFamily::StagHunt:  // a > b > c > d
      return {.a = hi, .b = mid_hi, .c = mid_lo, .d = lo};
    case GameFamily::Chicken:  // b > a > d > c
      return {.a = mid_hi, .b = hi, .c = lo, .d = mid_lo};
    case GameFamily::Leader:  // b > d > a > c
      return {.a = mid_lo, .b = hi, .c = lo, .d = mid_hi};
    case GameFamily::SecretMeeting:  // d > b > a > c
      return {.a = mid_lo, .b = mid_hi, .c = lo, .d = hi};
    case GameFamily::PrisonersDilemma:
      return {.a = 5.0 / 6.0, .b = hi, .c = mid_lo, .d = lo};
    case GameFamily::Other:
      break;
  }
  throw FamilyMismatch("no normalized exemplar exists for family Other");
}

}  // namespace qgame
