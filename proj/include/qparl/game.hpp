#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qparl/parliament.hpp"

namespace qparl {

/// Stage-game parameters: baseline pass probability p under symmetric play,
/// the success increment epsilon a lone autocrat gains, the reward r, and
/// the political cost c of the autocratic strategy.
struct GameParams {
  double p = 0.5;
  double epsilon = 0.1;
  double reward = 1.0;
  double cost = 0.1;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("GameParams: p must lie in [0, 1]");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
      throw std::invalid_argument("GameParams: epsilon must lie in [0, 1)");
    if (!(reward > 0.0)) throw std::invalid_argument("GameParams: reward must be positive");
    if (!(cost > 0.0 && cost < reward))
      throw std::invalid_argument("GameParams: cost must satisfy 0 < c < r");
  }
};

enum class Strategy { Tolerant, Autocratic };

struct StrategyProfile {
  Strategy alice = Strategy::Tolerant;
  Strategy bob = Strategy::Tolerant;

  bool operator==(const StrategyProfile&) const = default;
};

/// Probability the bill passes under the profile. Symmetric play (either
/// both tolerant or both autocratic) resolves to p; a lone autocrat shifts
/// p by epsilon in their favor, clamped to [0, 1]. Bob's success probability
/// is the complement.
inline double success_probability(const GameParams& params, const StrategyProfile& profile) {
  params.validate();
  if (profile.alice == profile.bob) return params.p;
  if (profile.alice == Strategy::Autocratic) return std::fmin(params.p + params.epsilon, 1.0);
  return std::fmax(params.p - params.epsilon, 0.0);
}

/// Bob's success probability, evaluated by the mirrored clamped formula
/// rather than literally as 1 - success_probability. Equal to the
/// complement up to one rounding step, and keeps reference payoff values
/// exact in floating point.
inline double bob_success_probability(const GameParams& params, const StrategyProfile& profile) {
  params.validate();
  const double q = 1.0 - params.p;
  if (profile.alice == profile.bob) return q;
  if (profile.bob == Strategy::Autocratic) return std::fmin(q + params.epsilon, 1.0);
  return std::fmax(q - params.epsilon, 0.0);
}

struct Payoff {
  double alice = 0.0;
  double bob = 0.0;
};

/// 2x2 bimatrix indexed by (Alice's strategy, Bob's strategy),
/// row/column 0 = Tolerant, 1 = Autocratic.
struct PayoffMatrix {
  std::array<std::array<Payoff, 2>, 2> cells{};

  Payoff& at(Strategy alice, Strategy bob) {
    return cells[alice == Strategy::Autocratic ? 1 : 0][bob == Strategy::Autocratic ? 1 : 0];
  }
  const Payoff& at(Strategy alice, Strategy bob) const {
    return cells[alice == Strategy::Autocratic ? 1 : 0][bob == Strategy::Autocratic ? 1 : 0];
  }
};

/// Expected payoffs: success pays the reward, failure pays zero, and an
/// autocratic player pays the cost unconditionally (r - c on success, -c on
/// failure).
inline PayoffMatrix payoff_matrix(const GameParams& params) {
  params.validate();
  PayoffMatrix m;
  for (Strategy a : {Strategy::Tolerant, Strategy::Autocratic}) {
    for (Strategy b : {Strategy::Tolerant, Strategy::Autocratic}) {
      Payoff& cell = m.at(a, b);
      cell.alice = success_probability(params, {a, b}) * params.reward -
                   (a == Strategy::Autocratic ? params.cost : 0.0);
      cell.bob = bob_success_probability(params, {a, b}) * params.reward -
                 (b == Strategy::Autocratic ? params.cost : 0.0);
    }
  }
  return m;
}

/// Pure Nash equilibria; a tie with the deviation payoff counts. Payoffs
/// within a relative rounding band of each other are treated as tied, so
/// exact indifference points (c == epsilon * r) survive the floating-point
/// construction of the matrix.
inline std::vector<StrategyProfile> pure_equilibria(const PayoffMatrix& m) {
  double scale = 1.0;
  for (const auto& row : m.cells)
    for (const auto& cell : row)
      scale = std::fmax(scale, std::fmax(std::abs(cell.alice), std::abs(cell.bob)));
  const double tol = 1e-12 * scale;

  std::vector<StrategyProfile> out;
  for (Strategy a : {Strategy::Tolerant, Strategy::Autocratic}) {
    for (Strategy b : {Strategy::Tolerant, Strategy::Autocratic}) {
      const Strategy alt_a = a == Strategy::Tolerant ? Strategy::Autocratic : Strategy::Tolerant;
      const Strategy alt_b = b == Strategy::Tolerant ? Strategy::Autocratic : Strategy::Tolerant;
      if (m.at(a, b).alice >= m.at(alt_a, b).alice - tol &&
          m.at(a, b).bob >= m.at(a, alt_b).bob - tol)
        out.push_back({a, b});
    }
  }
  return out;
}

/// Interior mixed equilibrium of the 2x2 bimatrix. Probabilities refer to
/// playing Tolerant. indifferent_everywhere marks the degenerate case where
/// both players are indifferent regardless of the opponent (any mix is an
/// equilibrium); the reported mix is then the canonical 1/2.
struct MixedEquilibrium {
  double alice_tolerant = 0.0;
  double bob_tolerant = 0.0;
  bool indifferent_everywhere = false;
};

inline std::optional<MixedEquilibrium> mixed_equilibrium(const PayoffMatrix& m) {
  constexpr Strategy T = Strategy::Tolerant;
  constexpr Strategy A = Strategy::Autocratic;
  // y = P(Bob plays T) making Alice indifferent; x = P(Alice plays T) making Bob indifferent.
  const double den_y = m.at(T, T).alice - m.at(A, T).alice - m.at(T, A).alice + m.at(A, A).alice;
  const double den_x = m.at(T, T).bob - m.at(T, A).bob - m.at(A, T).bob + m.at(A, A).bob;
  const double num_y = m.at(A, A).alice - m.at(T, A).alice;
  const double num_x = m.at(A, A).bob - m.at(A, T).bob;

  constexpr double tol = 1e-12;
  if (std::abs(den_y) < tol && std::abs(den_x) < tol) {
    if (std::abs(num_y) < tol && std::abs(num_x) < tol)
      return MixedEquilibrium{0.5, 0.5, true};
    return std::nullopt;  // one strategy strictly dominates for someone
  }
  if (std::abs(den_y) < tol || std::abs(den_x) < tol) return std::nullopt;

  const double y = num_y / den_y;
  const double x = num_x / den_x;
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) return std::nullopt;
  return MixedEquilibrium{x, y, false};
}

/// Game parameters estimated from the voting engines, per the reading that
/// the autocratic strategy sets the party's own radius to zero.
///
/// p is the exact pass probability of the tolerant configuration. The two
/// one-sided increments are p(r_A -> 0) - p for Alice and p - p(r_B -> 0)
/// for Bob; epsilon is their average (the stage game assumes one symmetric
/// increment, which only holds exactly for symmetric parliaments).
struct ParamEstimate {
  double p = 0.0;
  double epsilon = 0.0;
  double eps_alice = 0.0;
  double eps_bob = 0.0;
  bool degenerate = false;  // both increments vanish: cost-only comparison
};

inline ParamEstimate estimate_params(const ParliamentConfig& config,
                                     AngleMeasure measure = AngleMeasure::ThetaUniform) {
  config.validate();
  ParamEstimate est;
  est.p = p_pass(exact_margin_distribution(config, measure));

  ParliamentConfig alice_autocratic = config;
  alice_autocratic.r_a = 0.0;
  ParliamentConfig bob_autocratic = config;
  bob_autocratic.r_b = 0.0;

  est.eps_alice = p_pass(exact_margin_distribution(alice_autocratic, measure)) - est.p;
  est.eps_bob = est.p - p_pass(exact_margin_distribution(bob_autocratic, measure));
  const double avg = 0.5 * (est.eps_alice + est.eps_bob);
  est.epsilon = std::fmin(std::fmax(avg, 0.0), 1.0 - 1e-15);
  est.degenerate = est.epsilon <= 0.0;
  if (est.degenerate) est.epsilon = 0.0;
  return est;
}

}  // namespace qparl
