#pragma once

// Two-qubit density-matrix engine for the identity/flip tactic scheme.
//
// Basis order is (CC, CD, DC, DD) with Alice's qubit first, so index
// 2 * alice + bob with C = 0 and D = 1. Each player applies the identity with
// probability p (resp. q) and the flip U with the complementary probability;
// payoffs are expectations of diagonal payoff operators in the final state.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "qgame/best_response.hpp"
#include "qgame/error.hpp"
#include "qgame/game_model.hpp"

namespace qgame {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

enum BasisIndex : int { kCC = 0, kCD = 1, kDC = 2, kDD = 3 };

inline constexpr double kNormalizationTol = 1e-9;

inline Matrix2c identity_operator() { return Matrix2c::Identity(); }

// U|C> = |D>, U|D> = |C>.
inline Matrix2c flip_operator() {
  Matrix2c u;
  u << 0.0, 1.0, 1.0, 0.0;
  return u;
}

inline Matrix4c kron(const Matrix2c& alice, const Matrix2c& bob) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = alice(i, j) * bob;
  return out;
}

class InitialState {
 public:
  // alpha|CC> + beta|DD>; throws NormalizationError when
  // |alpha|^2 + |beta|^2 is off by more than kNormalizationTol.
  InitialState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormalizationTol) {
      throw NormalizationError("|alpha|^2 + |beta|^2 must equal 1");
    }
  }

  // Real amplitudes sqrt(X), sqrt(1 - X) rotated by the given phases.
  static InitialState from_entanglement(double x, double phase_alpha = 0.0,
                                        double phase_beta = 0.0) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InvalidArgument("entanglement parameter X must lie in [0, 1]");
    }
    return {std::polar(std::sqrt(x), phase_alpha),
            std::polar(std::sqrt(1.0 - x), phase_beta)};
  }

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }
  double entanglement() const noexcept { return std::norm(alpha_); }

 private:
  Complex alpha_;
  Complex beta_;
};

struct DensityInvariants {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix4c m) : m_(std::move(m)) {}

  const Matrix4c& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  DensityInvariants invariants() const {
    DensityInvariants inv;
    inv.hermiticity_error = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    inv.trace_error = std::abs(m_.trace() - Complex{1.0, 0.0});
    // Eigenvalues of the Hermitian part; rho itself is Hermitian to
    // within hermiticity_error.
    const Matrix4c herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm,
                                                   Eigen::EigenvaluesOnly);
    inv.min_eigenvalue = solver.eigenvalues().minCoeff();
    return inv;
  }

  bool is_valid(double herm_tol = 1e-12, double trace_tol = 1e-12,
                double psd_slack = 1e-10) const {
    const auto inv = invariants();
    return inv.hermiticity_error <= herm_tol && inv.trace_error <= trace_tol &&
           inv.min_eigenvalue >= -psd_slack;
  }

 private:
  Matrix4c m_;
};

inline DensityMatrix initial_density(const InitialState& s) {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(kCC) = s.alpha();
  psi(kDD) = s.beta();
  return DensityMatrix(psi * psi.adjoint());
}

// rho_in conjugated by I(x)I, I(x)U, U(x)I, U(x)U. evolve() mixes these with
// weights pq, p(1-q), (1-p)q, (1-p)(1-q); precomputing them lets grid sweeps
// over (p, q) reuse one set of conjugations.
class TacticBranches {
 public:
  explicit TacticBranches(const DensityMatrix& rho_in) {
    const Matrix2c id = identity_operator();
    const Matrix2c u = flip_operator();
    const std::array<Matrix4c, 4> ops = {kron(id, id), kron(id, u),
                                         kron(u, id), kron(u, u)};
    for (std::size_t i = 0; i < ops.size(); ++i) {
      branches_[i] = ops[i] * rho_in.matrix() * ops[i].adjoint();
    }
  }

  DensityMatrix mix(const StrategyProfile& s) const {
    const auto [p, q] = s;
    return DensityMatrix(p * q * branches_[0] + p * (1 - q) * branches_[1] +
                         (1 - p) * q * branches_[2] +
                         (1 - p) * (1 - q) * branches_[3]);
  }

 private:
  std::array<Matrix4c, 4> branches_;
};

inline DensityMatrix evolve(const DensityMatrix& rho_in,
                            const StrategyProfile& s) {
  return TacticBranches(rho_in).mix(s);
}

// Diagonal weights over (CC, CD, DC, DD).
struct PayoffOperators {
  std::array<double, 4> weights_A{};
  std::array<double, 4> weights_B{};
};

inline PayoffOperators payoff_operators(const PayoffMatrix& m) {
  return {{m.a, m.d, m.b, m.c}, {m.a, m.b, m.d, m.c}};
}

inline Payoffs expected_payoffs(const DensityMatrix& rho_fin,
                                const PayoffOperators& ops) {
  Payoffs out;
  for (int i = 0; i < 4; ++i) {
    const Complex diag = rho_fin(i, i);
    if (std::abs(diag.imag()) >= 1e-12) {
      throw DomainError("density matrix diagonal has an imaginary part");
    }
    out.A += ops.weights_A[static_cast<std::size_t>(i)] * diag.real();
    out.B += ops.weights_B[static_cast<std::size_t>(i)] * diag.real();
  }
  return out;
}

// Full pipeline: initial state -> final density matrix -> trace payoffs.
inline Payoffs engine_payoffs(const PayoffMatrix& m, const InitialState& state,
                              const StrategyProfile& s) {
  return expected_payoffs(evolve(initial_density(state), s),
                          payoff_operators(m));
}

// Closed-form payoffs with X = |alpha|^2.
inline Payoffs closed_form_payoffs(const PayoffMatrix& m, double x,
                                   const StrategyProfile& s) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("entanglement parameter X must lie in [0, 1]");
  }
  const auto [a, b, c, d] = m;
  const auto [p, q] = s;
  const double y = 1.0 - x;
  const double cross = p * q * (a + c - b - d);
  const double base = a * y + c * x;
  const double own = x * (d - c) + y * (b - a);    // own-probability slope
  const double other = x * (b - c) + y * (d - a);  // opponent-probability slope
  return {cross + p * own + q * other + base,
          cross + p * other + q * own + base};
}

}  // namespace qgame
