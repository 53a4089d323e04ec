#pragma once

// Nash-equilibrium enumeration for 2x2 games whose payoff differences are
// governed by affine best-response brackets.
//
// Alice's incentive to raise p is (p* - p) * K_A(q), so she plays p = 1 when
// K_A(q) > 0, p = 0 when K_A(q) < 0 and is indifferent when it vanishes. Bob
// is the same with K_B(p). The equilibrium set is the intersection of the two
// best-response graphs: corners, at most one interior point, and segments
// (continua) wherever a bracket vanishes on an edge or identically.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qgame/game_model.hpp"

namespace qgame {

struct BestResponseBracket {
  double slope = 0.0;      // coefficient of the opponent's probability
  double intercept = 0.0;  // value when the opponent plays 0

  constexpr double operator()(double t) const noexcept {
    return slope * t + intercept;
  }

  bool vanishes_identically(double eps = kDegenerateEps) const noexcept {
    return std::abs(slope) <= eps && std::abs(intercept) <= eps;
  }

  // Zero of the bracket, if the slope is non-degenerate.
  std::optional<double> root(double eps = kDegenerateEps) const noexcept {
    if (std::abs(slope) <= eps) return std::nullopt;
    return -intercept / slope;
  }
};

struct Payoffs {
  double A = 0.0;
  double B = 0.0;

  double sum() const noexcept { return A + B; }
};

enum class EquilibriumKind { Corner, Interior, Continuum };

constexpr std::string_view to_string(EquilibriumKind k) noexcept {
  switch (k) {
    case EquilibriumKind::Corner: return "Corner";
    case EquilibriumKind::Interior: return "Interior";
    case EquilibriumKind::Continuum: return "Continuum";
  }
  return "Corner";
}

enum class ContinuumAxis { P, Q, Both };

constexpr std::string_view to_string(ContinuumAxis axis) noexcept {
  switch (axis) {
    case ContinuumAxis::P: return "p";
    case ContinuumAxis::Q: return "q";
    case ContinuumAxis::Both: return "both";
  }
  return "p";
}

// The free coordinate ranges over [lo, hi]; the other coordinate is the one
// stored in the equilibrium's profile. For Both, the whole unit square.
struct ContinuumRange {
  ContinuumAxis axis = ContinuumAxis::P;
  double lo = 0.0;
  double hi = 1.0;
};

struct NashEquilibrium {
  StrategyProfile profile;  // representative point for a continuum
  Payoffs payoffs;
  EquilibriumKind kind = EquilibriumKind::Corner;
  std::optional<ContinuumRange> continuum;

  bool is_symmetric_profile() const noexcept {
    return profile.p == profile.q;
  }
};

namespace detail {

// {t in [0,1] : sign * bracket(t) >= -eps} as a closed interval, or nullopt.
inline std::optional<std::pair<double, double>> nonnegative_interval(
    const BestResponseBracket& bracket, double sign, double eps) {
  const double slope = sign * bracket.slope;
  const double intercept = sign * bracket.intercept;
  if (std::abs(slope) <= eps) {
    if (intercept >= -eps) return std::pair{0.0, 1.0};
    return std::nullopt;
  }
  const double r = -intercept / slope;
  double lo = 0.0, hi = 1.0;
  if (slope > 0.0) {
    lo = std::max(0.0, r);
  } else {
    hi = std::min(1.0, r);
  }
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

inline bool strictly_inside(double t, double eps) {
  return t > eps && t < 1.0 - eps;
}

}  // namespace detail

// `payoff_at` maps a StrategyProfile to Payoffs. Results are ordered corners
// first ((1,1), (1,0), (0,1), (0,0)), then the interior point, then continua.
template <typename PayoffFn>
std::vector<NashEquilibrium> enumerate_equilibria(
    const BestResponseBracket& alice, const BestResponseBracket& bob,
    PayoffFn&& payoff_at, double eps = kDegenerateEps) {
  std::vector<NashEquilibrium> out;

  auto alice_accepts = [&](double p, double q) {
    const double k = alice(q);
    return p == 1.0 ? k >= -eps : k <= eps;
  };
  auto bob_accepts = [&](double p, double q) {
    const double k = bob(p);
    return q == 1.0 ? k >= -eps : k <= eps;
  };

  for (const auto& [p, q] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.0},
                             std::pair{0.0, 1.0}, std::pair{0.0, 0.0}}) {
    if (alice_accepts(p, q) && bob_accepts(p, q)) {
      const StrategyProfile s{p, q};
      out.push_back({s, payoff_at(s), EquilibriumKind::Corner, std::nullopt});
    }
  }

  const bool alice_flat = alice.vanishes_identically(eps);
  const bool bob_flat = bob.vanishes_identically(eps);

  auto push_continuum = [&](ContinuumAxis axis, double fixed, double lo,
                            double hi) {
    const double mid = 0.5 * (lo + hi);
    const StrategyProfile s = axis == ContinuumAxis::P
                                  ? StrategyProfile{mid, fixed}
                                  : StrategyProfile{fixed, mid};
    out.push_back({s, payoff_at(s), EquilibriumKind::Continuum,
                   ContinuumRange{axis, lo, hi}});
  };

  if (alice_flat && bob_flat) {
    const StrategyProfile s{0.5, 0.5};
    out.push_back({s, payoff_at(s), EquilibriumKind::Continuum,
                   ContinuumRange{ContinuumAxis::Both, 0.0, 1.0}});
    return out;
  }

  // Interior point, or an interior line when one bracket is flat.
  const auto p_root = bob.root(eps);
  const auto q_root = alice.root(eps);
  if (!alice_flat && !bob_flat && p_root && q_root &&
      detail::strictly_inside(*p_root, eps) &&
      detail::strictly_inside(*q_root, eps)) {
    const StrategyProfile s{*p_root, *q_root};
    out.push_back({s, payoff_at(s), EquilibriumKind::Interior, std::nullopt});
  }
  if (alice_flat && p_root && detail::strictly_inside(*p_root, eps)) {
    push_continuum(ContinuumAxis::Q, *p_root, 0.0, 1.0);
  }
  if (bob_flat && q_root && detail::strictly_inside(*q_root, eps)) {
    push_continuum(ContinuumAxis::P, *q_root, 0.0, 1.0);
  }

  // Edge segments: one player indifferent at an edge value of the other's
  // probability, the other player's best response holding along the edge.
  for (const double q_edge : {1.0, 0.0}) {
    if (std::abs(alice(q_edge)) > eps) continue;
    const double sign = q_edge == 1.0 ? 1.0 : -1.0;
    if (auto range = detail::nonnegative_interval(bob, sign, eps);
        range && range->second - range->first > eps) {
      push_continuum(ContinuumAxis::P, q_edge, range->first, range->second);
    }
  }
  for (const double p_edge : {1.0, 0.0}) {
    if (std::abs(bob(p_edge)) > eps) continue;
    const double sign = p_edge == 1.0 ? 1.0 : -1.0;
    if (auto range = detail::nonnegative_interval(alice, sign, eps);
        range && range->second - range->first > eps) {
      push_continuum(ContinuumAxis::Q, p_edge, range->first, range->second);
    }
  }
  return out;
}

}  // namespace qgame
