#pragma once

// Equilibria of the quantized game as functions of the entanglement
// parameter X = |alpha|^2, the stag-hunt payoff-ordering regimes, and the
// density-matrix brute-force equilibrium check.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgame/best_response.hpp"
#include "qgame/game_model.hpp"
#include "qgame/quantum.hpp"

namespace qgame {

namespace detail {

inline void require_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("entanglement parameter X must lie in [0, 1]");
  }
}

inline void require_family(const PayoffMatrix& m, GameFamily expected) {
  const GameFamily actual = classify_family(m);
  if (actual != expected) {
    throw FamilyMismatch("expected a " + std::string(to_string(expected)) +
                         " matrix, got " + std::string(to_string(actual)));
  }
}

inline double checked_quotient(double num, double denom, const char* what) {
  if (std::abs(denom) <= kDegenerateEps) throw DegenerateDenominator(what);
  return num / denom;
}

}  // namespace detail

// Both players share this bracket: Delta_A = (p* - p) * B(q*) and
// Delta_B = (q* - q) * B(p*).
inline BestResponseBracket quantum_bracket(const PayoffMatrix& m, double x) {
  detail::require_unit_interval(x);
  return {m.a + m.c - m.b - m.d, x * (m.d - m.c) + (1.0 - x) * (m.b - m.a)};
}

inline std::vector<NashEquilibrium> quantum_nash_equilibria(
    const PayoffMatrix& m, double x) {
  m.validated();
  const auto k = quantum_bracket(m, x);
  return enumerate_equilibria(k, k, [&](const StrategyProfile& s) {
    return closed_form_payoffs(m, x, s);
  });
}

// ---------------------------------------------------------------------------
// Stag hunt

struct StagHuntPayoffs {
  double p11 = 0.0;  // $(1,1)
  double p00 = 0.0;  // $(0,0)
  double pmq = 0.0;  // $(m_q, m_q)
};

inline double m_q(const PayoffMatrix& m, double x) {
  detail::require_family(m, GameFamily::StagHunt);
  detail::require_unit_interval(x);
  return detail::checked_quotient(
      (m.c - m.d) * x + (m.a - m.b) * (1.0 - x), m.a - m.b + m.c - m.d,
      "interior equilibrium m_q");
}

inline StagHuntPayoffs stag_hunt_equilibrium_payoffs(const PayoffMatrix& m,
                                                     double x) {
  detail::require_family(m, GameFamily::StagHunt);
  detail::require_unit_interval(x);
  const auto [a, b, c, d] = m;
  const double y = 1.0 - x;
  const double pmq = detail::checked_quotient(
      (a * c - b * d) + x * y * (a + b - c - d) * (a - b - c + d),
      a - b + c - d, "interior equilibrium payoff");
  return {a * x + c * y, c * x + a * y, pmq};
}

struct Quadratic {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double x) const noexcept { return (c2 * x + c1) * x + c0; }

  // Real roots in ascending order. A vanishing leading coefficient falls
  // back to the linear root; a constant polynomial has none.
  std::vector<double> real_roots(double eps = kDegenerateEps) const {
    if (std::abs(c2) <= eps) {
      if (std::abs(c1) <= eps) return {};
      return {-c0 / c1};
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return {};
    const double h = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    std::vector<double> roots;
    if (h != 0.0) {
      roots = {h / c2, c0 / h};
    } else {
      roots = {0.0, 0.0};
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }
};

// Delta_(1,1)(X) = $(1,1) - $(m_q,m_q) and Delta_(0,0)(X) = $(0,0) - $(m_q,m_q)
// expanded in X.
struct DeltaPolynomials {
  Quadratic delta11;
  Quadratic delta00;
};

inline DeltaPolynomials delta_polynomials(const PayoffMatrix& m) {
  detail::require_family(m, GameFamily::StagHunt);
  const auto [a, b, c, d] = m;
  const double denom = a - b + c - d;
  if (std::abs(denom) <= kDegenerateEps) {
    throw DegenerateDenominator("payoff-difference polynomials");
  }
  const double curvature = (a + b - c - d) * (a - b - c + d) / denom;
  return {
      {curvature, (a - c) - curvature, -(b - c) * (c - d) / denom},
      {curvature, -(a - c) - curvature, (a - b) * (a - d) / denom},
  };
}

// Zeros of the two difference polynomials. x1_plus and x0_minus lie inside
// (0, 1) for every stag hunt and drive the regime boundaries; the other two
// are reported when their denominators are non-degenerate.
struct Thresholds {
  double x1_plus = 0.0;
  std::optional<double> x1_minus;
  double x0_minus = 0.0;
  std::optional<double> x0_plus;
};

inline Thresholds thresholds(const PayoffMatrix& m) {
  detail::require_family(m, GameFamily::StagHunt);
  const auto [a, b, c, d] = m;
  auto optional_quotient = [](double num, double denom) -> std::optional<double> {
    if (std::abs(denom) <= kDegenerateEps) return std::nullopt;
    return num / denom;
  };
  return {
      detail::checked_quotient(b - c, a + b - c - d, "threshold x1_plus"),
      optional_quotient(c - d, -a + b + c - d),
      detail::checked_quotient(a - d, a + b - c - d, "threshold x0_minus"),
      optional_quotient(a - b, a - b - c + d),
  };
}

struct RegimeClassification {
  int regime = 0;         // 1..7, in order of increasing X
  bool boundary = false;  // regimes 2, 4 and 6 sit on a single X value
};

constexpr std::string_view describe_regime(int regime) noexcept {
  switch (regime) {
    case 1: return "$(0,0) > $(m_q,m_q) > $(1,1)";
    case 2: return "$(0,0) > $(m_q,m_q) = $(1,1)";
    case 3: return "$(0,0) > $(1,1) > $(m_q,m_q)";
    case 4: return "$(0,0) = $(1,1) > $(m_q,m_q)";
    case 5: return "$(1,1) > $(0,0) > $(m_q,m_q)";
    case 6: return "$(1,1) > $(0,0) = $(m_q,m_q)";
    case 7: return "$(1,1) > $(m_q,m_q) > $(0,0)";
    default: return "unknown";
  }
}

// Regime from the position of X relative to x1_plus, 1/2 and x0_minus.
inline RegimeClassification regime_from_thresholds(const PayoffMatrix& m,
                                                   double x,
                                                   double x_tol = 1e-12) {
  detail::require_unit_interval(x);
  const auto th = thresholds(m);
  const std::array<double, 3> cuts = {th.x1_plus, 0.5, th.x0_minus};
  int regime = 1;
  for (const double cut : cuts) {
    if (std::abs(x - cut) <= x_tol) return {regime + 1, true};
    if (x < cut) return {regime, false};
    regime += 2;
  }
  return {regime, false};
}

// Regime by comparing the three equilibrium payoffs directly; differences
// within `tol` count as equal.
inline RegimeClassification classify_regime(const PayoffMatrix& m, double x,
                                            double tol = 1e-9) {
  const auto pay = stag_hunt_equilibrium_payoffs(m, x);
  auto eq = [tol](double u, double v) { return std::abs(u - v) <= tol; };
  auto gt = [tol](double u, double v) { return u - v > tol; };
  const double p00 = pay.p00, p11 = pay.p11, pmq = pay.pmq;

  if (gt(p00, pmq) && gt(pmq, p11)) return {1, false};
  if (gt(p00, pmq) && eq(pmq, p11)) return {2, true};
  if (gt(p00, p11) && gt(p11, pmq)) return {3, false};
  if (eq(p00, p11) && gt(p11, pmq)) return {4, true};
  if (gt(p11, p00) && gt(p00, pmq)) return {5, false};
  if (gt(p11, p00) && eq(p00, pmq)) return {6, true};
  if (gt(p11, pmq) && gt(pmq, p00)) return {7, false};
  // Unreachable for a stag hunt unless tol is wider than the payoff gaps.
  return regime_from_thresholds(m, x);
}

// ---------------------------------------------------------------------------
// Chicken, Leader and Secret Meeting: equilibria (1,0), (0,1) and (m', m').

struct FamilyEquilibriumTable {
  Payoffs p10;
  Payoffs p01;
  Payoffs interior;
  double m_interior = 0.0;
};

// Works for any matrix of the three anti-coordination families.
inline FamilyEquilibriumTable anti_coordination_table(const PayoffMatrix& m,
                                                      double x) {
  const GameFamily f = classify_family(m);
  if (f != GameFamily::Chicken && f != GameFamily::Leader &&
      f != GameFamily::SecretMeeting) {
    throw FamilyMismatch("expected a Chicken, Leader or SecretMeeting matrix");
  }
  const auto k = quantum_bracket(m, x);
  const auto root = k.root();
  if (!root) throw DegenerateDenominator("interior equilibrium m'");
  const double mi = *root;
  return {closed_form_payoffs(m, x, {1.0, 0.0}),
          closed_form_payoffs(m, x, {0.0, 1.0}),
          closed_form_payoffs(m, x, {mi, mi}), mi};
}

inline FamilyEquilibriumTable family_equilibrium_table(GameFamily f,
                                                       double x) {
  if (f != GameFamily::Chicken && f != GameFamily::Leader &&
      f != GameFamily::SecretMeeting) {
    throw FamilyMismatch("family table covers Chicken, Leader, SecretMeeting");
  }
  return anti_coordination_table(normalized_exemplar(f), x);
}

// ---------------------------------------------------------------------------
// Brute-force equilibrium check through the density-matrix engine.

struct VerificationReport {
  bool verified = false;
  // Largest gain any unilateral grid deviation achieves; <= tol when verified.
  double worst_improvement = -std::numeric_limits<double>::infinity();
  char worst_player = 'A';
  StrategyProfile worst_deviation;
  Payoffs at_candidate;
};

inline VerificationReport brute_force_verify(const PayoffOperators& ops,
                                             const InitialState& state,
                                             const StrategyProfile& candidate,
                                             int grid_n, double tol) {
  if (grid_n < 2) throw InvalidArgument("verification grid needs >= 2 points");
  const TacticBranches branches(initial_density(state));
  auto payoff = [&](const StrategyProfile& s) {
    return expected_payoffs(branches.mix(s), ops);
  };

  VerificationReport report;
  report.at_candidate = payoff(candidate);
  for (int i = 0; i < grid_n; ++i) {
    const double t = static_cast<double>(i) / (grid_n - 1);
    const StrategyProfile alice_dev{t, candidate.q};
    const StrategyProfile bob_dev{candidate.p, t};
    const double gain_a = payoff(alice_dev).A - report.at_candidate.A;
    const double gain_b = payoff(bob_dev).B - report.at_candidate.B;
    if (gain_a > report.worst_improvement) {
      report.worst_improvement = gain_a;
      report.worst_player = 'A';
      report.worst_deviation = alice_dev;
    }
    if (gain_b > report.worst_improvement) {
      report.worst_improvement = gain_b;
      report.worst_player = 'B';
      report.worst_deviation = bob_dev;
    }
  }
  report.verified = report.worst_improvement <= tol;
  return report;
}

inline VerificationReport brute_force_verify(const PayoffMatrix& m, double x,
                                             const StrategyProfile& candidate,
                                             int grid_n = 1001,
                                             double tol = 1e-9) {
  return brute_force_verify(payoff_operators(m.validated()),
                            InitialState::from_entanglement(x), candidate,
                            grid_n, tol);
}

// ---------------------------------------------------------------------------
// Prisoner's Dilemma exploration.

struct PdExplorationRow {
  double x = 0.0;
  std::vector<NashEquilibrium> ranked;  // by payoff sum, best first
  bool non_corner_first = false;
};

struct PdExplorationReport {
  std::vector<PdExplorationRow> rows;
  std::string observation;
};

inline PdExplorationReport pd_exploration(const PayoffMatrix& m,
                                          const std::vector<double>& x_grid) {
  detail::require_family(m, GameFamily::PrisonersDilemma);
  PdExplorationReport report;
  int non_corner_rows = 0;
  std::ostringstream near_ends;
  for (const double x : x_grid) {
    PdExplorationRow row{x, quantum_nash_equilibria(m, x), false};
    std::stable_sort(row.ranked.begin(), row.ranked.end(),
                     [](const NashEquilibrium& l, const NashEquilibrium& r) {
                       return l.payoffs.sum() > r.payoffs.sum();
                     });
    if (!row.ranked.empty()) {
      const auto& best = row.ranked.front();
      row.non_corner_first = best.kind != EquilibriumKind::Corner;
      non_corner_rows += row.non_corner_first ? 1 : 0;
      if (x <= 0.1 || x >= 0.9) {
        near_ends << " X=" << x << ": (" << best.profile.p << ","
                  << best.profile.q << ") " << to_string(best.kind) << ";";
      }
    }
    report.rows.push_back(std::move(row));
  }
  std::ostringstream obs;
  obs << "non-corner equilibrium ranked first at " << non_corner_rows << " of "
      << x_grid.size() << " X values; best-sum equilibrium near X=0 and X=1:"
      << near_ends.str();
  report.observation = obs.str();
  return report;
}

}  // namespace qgame
