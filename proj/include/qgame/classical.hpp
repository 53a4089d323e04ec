#pragma once

// Classical mixed-strategy play of the symmetric 2x2 game.

#include <cmath>
#include <vector>

#include "qgame/best_response.hpp"
#include "qgame/game_model.hpp"

namespace qgame {

inline Payoffs classical_payoffs(const PayoffMatrix& m,
                                 const StrategyProfile& s) {
  const auto [p, q] = s;
  return {
      p * q * m.a + p * (1 - q) * m.d + q * (1 - p) * m.b +
          (1 - p) * (1 - q) * m.c,
      p * q * m.a + p * (1 - q) * m.b + q * (1 - p) * m.d +
          (1 - p) * (1 - q) * m.c,
  };
}

// Bracket K(t) = t(a - b) + (1 - t)(d - c), shared by both players.
constexpr BestResponseBracket classical_bracket(const PayoffMatrix& m) {
  return {m.a - m.b - m.d + m.c, m.d - m.c};
}

// (Delta_A, Delta_B): Alice's gain from star.p over dev.p with Bob fixed at
// star.q, and Bob's gain from star.q over dev.q with Alice at star.p.
inline Payoffs classical_delta(const PayoffMatrix& m,
                               const StrategyProfile& star,
                               const StrategyProfile& dev) {
  const auto k = classical_bracket(m);
  return {(star.p - dev.p) * k(star.q), (star.q - dev.q) * k(star.p)};
}

// m = (c - d) / (a - b + c - d), the fully mixed equilibrium probability.
inline double classical_mixed_m(const PayoffMatrix& m) {
  const double denom = m.a - m.b + m.c - m.d;
  if (std::abs(denom) <= kDegenerateEps) {
    throw DegenerateDenominator("classical mixed probability m");
  }
  return (m.c - m.d) / denom;
}

inline std::vector<NashEquilibrium> classical_nash_equilibria(
    const PayoffMatrix& m) {
  m.validated();
  const auto k = classical_bracket(m);
  return enumerate_equilibria(
      k, k, [&](const StrategyProfile& s) { return classical_payoffs(m, s); });
}

}  // namespace qgame
