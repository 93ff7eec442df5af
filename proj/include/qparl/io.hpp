#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "qparl/game.hpp"
#include "qparl/parliament.hpp"

namespace qparl {

using json = nlohmann::json;

/// One runnable scenario, the on-disk form of a parliament plus sampling
/// policy. Keys: n_a, n_b, n_i, r_a, r_b, shots, seed, angle_mode
/// ("per-shot" | "fixed"), measure ("theta-uniform" | "cap-uniform").
struct Scenario {
  ParliamentConfig config;
  SamplingPolicy policy;
  std::uint64_t shots = 100000;
};

inline std::string to_string(AngleMode mode) {
  return mode == AngleMode::PerShot ? "per-shot" : "fixed";
}

inline std::string to_string(AngleMeasure measure) {
  return measure == AngleMeasure::ThetaUniform ? "theta-uniform" : "cap-uniform";
}

inline AngleMode angle_mode_from_string(const std::string& s) {
  if (s == "per-shot") return AngleMode::PerShot;
  if (s == "fixed") return AngleMode::FixedPerRun;
  throw std::invalid_argument("angle_mode must be \"per-shot\" or \"fixed\", got \"" + s + "\"");
}

inline AngleMeasure measure_from_string(const std::string& s) {
  if (s == "theta-uniform") return AngleMeasure::ThetaUniform;
  if (s == "cap-uniform") return AngleMeasure::CapUniform;
  throw std::invalid_argument("measure must be \"theta-uniform\" or \"cap-uniform\", got \"" + s +
                              "\"");
}

namespace detail {

template <typename T>
T require_field(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end())
    throw std::invalid_argument(std::string("scenario: missing field \"") + field + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("scenario: field \"") + field +
                                "\" has the wrong type");
  }
}

}  // namespace detail

/// Parse a scenario object, diagnosing the offending field by name. Parse
/// errors from malformed JSON text carry nlohmann's byte-position message.
inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario: top-level JSON must be an object");
  Scenario sc;
  sc.config.n_a = detail::require_field<int>(j, "n_a");
  sc.config.n_b = detail::require_field<int>(j, "n_b");
  sc.config.n_i = detail::require_field<int>(j, "n_i");
  sc.config.r_a = detail::require_field<double>(j, "r_a");
  sc.config.r_b = detail::require_field<double>(j, "r_b");
  sc.shots = detail::require_field<std::uint64_t>(j, "shots");
  sc.policy.seed = detail::require_field<std::uint64_t>(j, "seed");
  sc.policy.angle_mode = angle_mode_from_string(detail::require_field<std::string>(j, "angle_mode"));
  sc.policy.measure = measure_from_string(detail::require_field<std::string>(j, "measure"));
  sc.config.validate();
  return sc;
}

inline Scenario scenario_from_text(const std::string& text) {
  return scenario_from_json(json::parse(text));
}

inline json scenario_to_json(const Scenario& sc) {
  return json{{"n_a", sc.config.n_a},   {"n_b", sc.config.n_b},
              {"n_i", sc.config.n_i},   {"r_a", sc.config.r_a},
              {"r_b", sc.config.r_b},   {"shots", sc.shots},
              {"seed", sc.policy.seed}, {"angle_mode", to_string(sc.policy.angle_mode)},
              {"measure", to_string(sc.policy.measure)}};
}

/// Result file: pmf and histogram keyed by margin, pass probability, its
/// standard error, and the engine that produced it.
inline json result_to_json(const std::map<int, double>& pmf,
                           const std::map<int, std::uint64_t>& histogram, double p_pass,
                           double stderr_value, const std::string& engine) {
  json jpmf = json::object();
  for (const auto& [margin, prob] : pmf) jpmf[std::to_string(margin)] = prob;
  json jhist = json::object();
  for (const auto& [margin, count] : histogram) jhist[std::to_string(margin)] = count;
  return json{{"pmf", jpmf},
              {"histogram", jhist},
              {"p_pass", p_pass},
              {"stderr", stderr_value},
              {"engine", engine}};
}

inline json result_to_json(const MarginDistribution& dist) {
  return result_to_json(dist.pmf(), {}, p_pass(dist), 0.0, "exact");
}

inline json result_to_json(const SimulationResult& result, int total_voters) {
  const MarginDistribution dist = result.to_distribution(total_voters);
  return result_to_json(dist.pmf(), result.histogram, result.p_pass, result.standard_error, "mc");
}

inline json result_to_json(const CircuitVerifyReport& report) {
  std::map<int, double> pmf;
  for (const auto& [margin, count] : report.histogram)
    pmf[margin] = static_cast<double>(count) / static_cast<double>(report.shots);
  json j = result_to_json(pmf, report.histogram, report.circuit_p_pass, 0.0, "circuit");
  json jexact = json::object();
  for (const auto& [margin, prob] : report.exact_pmf) jexact[std::to_string(margin)] = prob;
  j["comparison"] = json{{"tv_distance", report.tv_distance},
                         {"threshold", report.threshold},
                         {"pass", report.pass},
                         {"exact_pmf", jexact},
                         {"total_qubits", report.total_qubits},
                         {"ancilla_qubits", report.ancilla_qubits}};
  return j;
}

/// CSV form of a result: one row per margin.
inline std::string result_to_csv(const std::map<int, double>& pmf,
                                 const std::map<int, std::uint64_t>& histogram) {
  std::string out = "margin,probability,count\n";
  std::map<int, std::pair<double, std::uint64_t>> rows;
  for (const auto& [margin, prob] : pmf) rows[margin].first = prob;
  for (const auto& [margin, count] : histogram) rows[margin].second = count;
  char buf[64];
  for (const auto& [margin, row] : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%llu\n", margin, row.first,
                  static_cast<unsigned long long>(row.second));
    out += buf;
  }
  return out;
}

inline std::string strategy_name(Strategy s) {
  return s == Strategy::Tolerant ? "tolerant" : "autocratic";
}

/// Game report: parameters, bimatrix (rows Alice T/A, columns Bob T/A, each
/// cell [alice, bob]), equilibria, and the cost threshold epsilon*reward at
/// which the tolerant and autocratic strategies trade places.
inline json game_report_to_json(const GameParams& params, const PayoffMatrix& matrix,
                                const std::vector<StrategyProfile>& pure,
                                const std::optional<MixedEquilibrium>& mixed,
                                const std::optional<ParamEstimate>& estimate = std::nullopt) {
  json jmatrix = json::array();
  for (Strategy a : {Strategy::Tolerant, Strategy::Autocratic}) {
    json row = json::array();
    for (Strategy b : {Strategy::Tolerant, Strategy::Autocratic}) {
      const Payoff& cell = matrix.at(a, b);
      row.push_back(json::array({cell.alice, cell.bob}));
    }
    jmatrix.push_back(row);
  }
  json jpure = json::array();
  for (const auto& profile : pure)
    jpure.push_back(json{{"alice", strategy_name(profile.alice)},
                         {"bob", strategy_name(profile.bob)}});
  json out{{"params",
            json{{"p", params.p},
                 {"epsilon", params.epsilon},
                 {"reward", params.reward},
                 {"cost", params.cost}}},
           {"matrix", jmatrix},
           {"pure_equilibria", jpure},
           {"threshold_c", params.epsilon * params.reward}};
  if (mixed)
    out["mixed"] = json{{"alice_tolerant", mixed->alice_tolerant},
                        {"bob_tolerant", mixed->bob_tolerant},
                        {"indifferent_everywhere", mixed->indifferent_everywhere}};
  else
    out["mixed"] = nullptr;
  if (estimate)
    out["estimate"] = json{{"p", estimate->p},
                           {"epsilon", estimate->epsilon},
                           {"eps_alice", estimate->eps_alice},
                           {"eps_bob", estimate->eps_bob},
                           {"degenerate", estimate->degenerate},
                           {"note", "epsilon averaged from the two one-sided increments; "
                                    "the stage game assumes a single symmetric value"}};
  return out;
}

}  // namespace qparl
