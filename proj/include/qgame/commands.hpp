#pragma once

// The analyze / sweep / verify / families commands behind the `qgame` CLI.
// Each run_* function writes its report to `out`, a one-line diagnostic to
// `err`, and returns the process exit code.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "qgame/best_response.hpp"
#include "qgame/classical.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/game_model.hpp"
#include "qgame/quantum.hpp"

namespace qgame::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kParseError = 2,
  kDomainError = 3,
  kIoError = 4,
};

inline constexpr int kSchemaVersion = 1;
inline constexpr int kDefaultSweepResolution = 1000;
inline constexpr int kDefaultVerifyGrid = 101;
inline constexpr double kDefaultTol = 1e-9;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameDefinition {
  PayoffMatrix matrix;
  std::string name;
};

inline GameDefinition parse_game(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("game definition must be an object");
  auto field = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
      throw ParseError(std::string("missing numeric field \"") + key + "\"");
    }
    return doc[key].get<double>();
  };
  GameDefinition def;
  def.matrix = {field("a"), field("b"), field("c"), field("d")};
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string");
    def.name = doc["name"].get<std::string>();
  }
  return def;
}

inline GameDefinition load_game(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read game file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

// 12 significant digits, shortest of fixed/scientific as %g would pick,
// locale-independent.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline void write_atomically(const std::filesystem::path& path,
                             const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

// ---------------------------------------------------------------------------
// JSON helpers

inline nlohmann::json to_json(const Payoffs& p) {
  return {{"A", p.A}, {"B", p.B}};
}

inline nlohmann::json to_json(const NashEquilibrium& eq) {
  nlohmann::json j = {{"p", eq.profile.p},
                      {"q", eq.profile.q},
                      {"kind", std::string(to_string(eq.kind))},
                      {"payoff_A", eq.payoffs.A},
                      {"payoff_B", eq.payoffs.B}};
  if (eq.continuum) {
    j["continuum"] = {{"axis", std::string(to_string(eq.continuum->axis))},
                      {"lo", eq.continuum->lo},
                      {"hi", eq.continuum->hi}};
  }
  return j;
}

inline nlohmann::json to_json(const PayoffMatrix& m) {
  return {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}};
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

// ---------------------------------------------------------------------------
// verify

struct VerifySettings {
  int grid_n = kDefaultVerifyGrid;
  double tol = kDefaultTol;
  // Replaces the payoff operators the engine uses; lets tests feed a
  // deliberately inconsistent operator pair.
  std::optional<PayoffOperators> operators_override;
};

struct VerifyOutcome {
  nlohmann::json report;
  bool passed = false;
};

inline VerifyOutcome verify_game(const PayoffMatrix& m, double x,
                                 const VerifySettings& settings) {
  m.validated();
  if (settings.grid_n < 2) throw InvalidArgument("--grid must be >= 2");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("--x must lie in [0, 1]");

  const PayoffOperators ops =
      settings.operators_override.value_or(payoff_operators(m));
  // Arbitrary non-trivial phases; payoffs must not depend on them.
  const InitialState state = InitialState::from_entanglement(x, 0.7, -1.3);
  const TacticBranches branches(initial_density(state));

  double worst_closed_form = 0.0;
  DensityInvariants worst_inv;
  worst_inv.min_eigenvalue = std::numeric_limits<double>::infinity();
  const int n = settings.grid_n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const StrategyProfile s{static_cast<double>(i) / (n - 1),
                              static_cast<double>(j) / (n - 1)};
      const DensityMatrix rho = branches.mix(s);
      const Payoffs engine = expected_payoffs(rho, ops);
      const Payoffs closed = closed_form_payoffs(m, x, s);
      worst_closed_form =
          std::max({worst_closed_form, std::abs(engine.A - closed.A),
                    std::abs(engine.B - closed.B)});
      const auto inv = rho.invariants();
      worst_inv.hermiticity_error =
          std::max(worst_inv.hermiticity_error, inv.hermiticity_error);
      worst_inv.trace_error = std::max(worst_inv.trace_error, inv.trace_error);
      worst_inv.min_eigenvalue =
          std::min(worst_inv.min_eigenvalue, inv.min_eigenvalue);
    }
  }

  nlohmann::json eq_reports = nlohmann::json::array();
  double worst_improvement = -std::numeric_limits<double>::infinity();
  bool all_verified = true;
  for (const auto& eq : quantum_nash_equilibria(m, x)) {
    const auto r = brute_force_verify(ops, state, eq.profile, n, settings.tol);
    worst_improvement = std::max(worst_improvement, r.worst_improvement);
    all_verified = all_verified && r.verified;
    auto j = to_json(eq);
    j["verified"] = r.verified;
    j["worst_improvement"] = r.worst_improvement;
    j["worst_player"] = std::string(1, r.worst_player);
    j["worst_deviation"] = {r.worst_deviation.p, r.worst_deviation.q};
    eq_reports.push_back(std::move(j));
  }

  const bool closed_ok = worst_closed_form <= settings.tol;
  const bool density_ok = worst_inv.hermiticity_error <= 1e-12 &&
                          worst_inv.trace_error <= 1e-12 &&
                          worst_inv.min_eigenvalue >= -1e-10;
  VerifyOutcome outcome;
  outcome.passed = closed_ok && density_ok && all_verified;
  outcome.report = {
      {"schema_version", kSchemaVersion},
      {"command", "verify"},
      {"X", x},
      {"grid", n},
      {"tol", settings.tol},
      {"closed_form_equivalence",
       {{"worst_deviation", worst_closed_form}, {"passed", closed_ok}}},
      {"density_invariants",
       {{"worst_hermiticity_error", worst_inv.hermiticity_error},
        {"worst_trace_error", worst_inv.trace_error},
        {"min_eigenvalue", worst_inv.min_eigenvalue},
        {"passed", density_ok}}},
      {"equilibria", eq_reports},
      {"worst_improvement", worst_improvement},
      {"passed", outcome.passed},
  };
  return outcome;
}

// ---------------------------------------------------------------------------
// analyze

inline std::vector<double> default_exploration_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

inline nlohmann::json analyze_game(const GameDefinition& def, double x,
                                   const VerifySettings& settings) {
  const PayoffMatrix& m = def.matrix;
  m.validated();
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("--x must lie in [0, 1]");
  const GameFamily family = classify_family(m);

  nlohmann::json report = {
      {"schema_version", kSchemaVersion},
      {"command", "analyze"},
      {"name", def.name},
      {"game", to_json(m)},
      {"family", std::string(to_string(family))},
      {"X", x},
  };

  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& eq : quantum_nash_equilibria(m, x)) eqs.push_back(to_json(eq));
  report["equilibria"] = eqs;

  nlohmann::json classical = nlohmann::json::array();
  for (const auto& eq : classical_nash_equilibria(m)) {
    classical.push_back(to_json(eq));
  }
  report["classical_equilibria"] = classical;

  if (family == GameFamily::StagHunt) {
    const auto th = thresholds(m);
    report["thresholds"] = {{"x1_plus", th.x1_plus},
                            {"x1_minus", optional_json(th.x1_minus)},
                            {"x0_minus", th.x0_minus},
                            {"x0_plus", optional_json(th.x0_plus)}};
    const auto pay = stag_hunt_equilibrium_payoffs(m, x);
    report["stag_hunt_payoffs"] = {
        {"P11", pay.p11}, {"P00", pay.p00}, {"Pmq", pay.pmq}, {"m_q", m_q(m, x)}};
    const auto regime = classify_regime(m, x, settings.tol);
    report["regime"] = {{"index", regime.regime},
                        {"boundary", regime.boundary},
                        {"ordering", std::string(describe_regime(regime.regime))}};
  } else if (family == GameFamily::Chicken || family == GameFamily::Leader ||
             family == GameFamily::SecretMeeting) {
    const auto table = anti_coordination_table(m, x);
    report["family_table"] = {{"P10", to_json(table.p10)},
                              {"P01", to_json(table.p01)},
                              {"Pmm", to_json(table.interior)},
                              {"m_interior", table.m_interior}};
  } else if (family == GameFamily::PrisonersDilemma) {
    const auto pd = pd_exploration(m, default_exploration_grid());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : pd.rows) {
      nlohmann::json ranked = nlohmann::json::array();
      for (const auto& eq : row.ranked) ranked.push_back(to_json(eq));
      rows.push_back({{"X", row.x},
                      {"ranked", ranked},
                      {"non_corner_first", row.non_corner_first}});
    }
    report["pd_exploration"] = {{"rows", rows},
                                {"observation", pd.observation}};
  }

  const auto verification = verify_game(m, x, settings);
  report["verification"] = {
      {"passed", verification.passed},
      {"grid", settings.grid_n},
      {"closed_form_worst_deviation",
       verification.report["closed_form_equivalence"]["worst_deviation"]},
      {"worst_improvement", verification.report["worst_improvement"]},
  };
  return report;
}

// ---------------------------------------------------------------------------
// sweep / families

inline void require_resolution(int resolution) {
  if (resolution < 2) throw InvalidArgument("--resolution must be >= 2");
}

inline std::string join_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

inline std::string sweep_csv(const PayoffMatrix& m, int resolution) {
  m.validated();
  require_resolution(resolution);
  const GameFamily family = classify_family(m);
  const bool anti_coordination = family == GameFamily::Chicken ||
                                 family == GameFamily::Leader ||
                                 family == GameFamily::SecretMeeting;
  std::string csv;
  if (family == GameFamily::StagHunt) {
    csv += "X,P11,P00,Pmq,m_interior,regime\n";
  } else if (anti_coordination) {
    csv += "X,P10_A,P10_B,P01_A,P01_B,Pmm_A,Pmm_B,m_interior\n";
  } else {
    csv += "X,n_equilibria,best_p,best_q,best_A,best_B,m_interior\n";
  }
  const auto f = format_number;
  for (int i = 0; i <= resolution; ++i) {
    const double x = static_cast<double>(i) / resolution;
    if (family == GameFamily::StagHunt) {
      const auto pay = stag_hunt_equilibrium_payoffs(m, x);
      csv += join_row({f(x), f(pay.p11), f(pay.p00), f(pay.pmq),
                       f(m_q(m, x)),
                       std::to_string(classify_regime(m, x).regime)});
    } else if (anti_coordination) {
      const auto t = anti_coordination_table(m, x);
      csv += join_row({f(x), f(t.p10.A), f(t.p10.B), f(t.p01.A), f(t.p01.B),
                       f(t.interior.A), f(t.interior.B), f(t.m_interior)});
    } else {
      auto eqs = quantum_nash_equilibria(m, x);
      std::string interior;
      for (const auto& eq : eqs) {
        if (eq.kind == EquilibriumKind::Interior) interior = f(eq.profile.p);
      }
      const auto best = std::max_element(
          eqs.begin(), eqs.end(), [](const auto& l, const auto& r) {
            return l.payoffs.sum() < r.payoffs.sum();
          });
      csv += join_row({f(x), std::to_string(eqs.size()), f(best->profile.p),
                       f(best->profile.q), f(best->payoffs.A),
                       f(best->payoffs.B), interior});
    }
  }
  return csv;
}

inline std::string families_csv(int resolution = kDefaultSweepResolution) {
  require_resolution(resolution);
  std::string csv = "family,X,P10_A,P10_B,P01_A,P01_B,Pmm_A,Pmm_B,m_interior\n";
  const auto f = format_number;
  for (const GameFamily fam :
       {GameFamily::Chicken, GameFamily::Leader, GameFamily::SecretMeeting}) {
    for (int i = 0; i <= resolution; ++i) {
      const double x = static_cast<double>(i) / resolution;
      const auto t = family_equilibrium_table(fam, x);
      csv += join_row({std::string(to_string(fam)), f(x), f(t.p10.A),
                       f(t.p10.B), f(t.p01.A), f(t.p01.B), f(t.interior.A),
                       f(t.interior.B), f(t.m_interior)});
    }
  }
  return csv;
}

// ---------------------------------------------------------------------------
// Entry points with exit-code mapping.

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
}

inline int run_analyze(const std::filesystem::path& game_file, double x,
                       const VerifySettings& settings, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    const auto def = load_game(game_file);
    out << analyze_game(def, x, settings).dump(2) << '\n';
    return kOk;
  });
}

inline int run_sweep(const std::filesystem::path& game_file, int resolution,
                     const std::filesystem::path& out_path, std::ostream& err) {
  return guarded(err, [&] {
    const auto def = load_game(game_file);
    write_atomically(out_path, sweep_csv(def.matrix, resolution));
    return kOk;
  });
}

inline int run_verify(const std::filesystem::path& game_file, double x,
                      const VerifySettings& settings, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    const auto def = load_game(game_file);
    const auto outcome = verify_game(def.matrix, x, settings);
    out << outcome.report.dump(2) << '\n';
    if (!outcome.passed) {
      err << "verification failed: worst deviation exceeds tolerance\n";
      return kVerificationFailed;
    }
    return kOk;
  });
}

inline int run_families(const std::filesystem::path& out_path, int resolution,
                        std::ostream& err) {
  return guarded(err, [&] {
    write_atomically(out_path, families_csv(resolution));
    return kOk;
  });
}

}  // namespace qgame::cli
