#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qparl/io.hpp"

namespace qparl::cli {

struct FigureTarget {
  ParliamentConfig config;
  std::string description;
};

/// Canned configurations behind `reproduce`, one per experiment histogram
/// in the source figures (figure ids follow caption order; 1 and 2 are the
/// geometry sketch and the circuit schematic, so targets start at 3).
inline const std::map<std::string, FigureTarget>& figure_registry() {
  static const std::map<std::string, FigureTarget> registry = [] {
    std::map<std::string, FigureTarget> reg;
    auto add = [&](int id, int na, int nb, int ni, double ra, double rb) {
      std::ostringstream desc;
      desc << na << "+" << nb;
      if (ni > 0) desc << "+" << ni;
      desc << " seats, r_a=" << ra << ", r_b=" << rb;
      reg["fig" + std::to_string(id)] = FigureTarget{{na, nb, ni, ra, rb}, desc.str()};
    };
    // majority vs opposition, equal radii
    add(3, 8, 6, 0, 0.0, 0.0);
    add(4, 8, 6, 0, 1.0, 1.0);
    add(5, 8, 6, 0, 0.1, 0.1);
    add(6, 8, 6, 0, 0.3, 0.3);
    add(7, 8, 6, 0, 0.5, 0.5);
    add(8, 8, 6, 0, 0.7, 0.7);
    // unequal radii, opposition twice the majority and the reverse
    add(9, 8, 6, 0, 0.15, 0.30);
    add(10, 8, 6, 0, 0.25, 0.50);
    add(11, 8, 6, 0, 0.35, 0.70);
    add(12, 8, 6, 0, 0.50, 1.00);
    add(13, 8, 6, 0, 0.30, 0.15);
    add(14, 8, 6, 0, 0.50, 0.25);
    add(15, 8, 6, 0, 0.70, 0.35);
    add(16, 8, 6, 0, 1.00, 0.50);
    // two independents alongside a majority
    add(17, 8, 4, 2, 0.0, 0.0);
    add(18, 8, 4, 2, 1.0, 1.0);
    add(19, 8, 4, 2, 0.1, 0.1);
    add(20, 8, 4, 2, 0.3, 0.3);
    add(21, 8, 4, 2, 0.5, 0.5);
    add(22, 8, 4, 2, 0.7, 0.7);
    // deadlocked parties, with and without independents
    add(23, 7, 7, 0, 0.0, 0.0);
    add(24, 6, 6, 2, 0.0, 0.0);
    add(25, 7, 7, 0, 0.2, 0.2);
    add(26, 6, 6, 2, 0.2, 0.2);
    add(27, 7, 7, 0, 0.5, 0.5);
    add(28, 6, 6, 2, 0.5, 0.5);
    return reg;
  }();
  return registry;
}

namespace detail {

/// Inclusive decimal grid "lo:hi:step". Labels are formed by integer
/// arithmetic on the decimal representations, so grid points print exactly
/// as written (0.30, never 0.30000000000000004).
struct RadiusGrid {
  std::vector<double> values;
  std::vector<std::string> labels;
};

inline int decimal_places(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

inline RadiusGrid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);
  if (parts.size() != 3)
    throw std::invalid_argument("grid must have the form lo:hi:step, got \"" + text + "\"");

  int places = 0;
  for (const auto& p : parts) places = std::max(places, decimal_places(p));
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;

  auto to_scaled = [&](const std::string& s) -> std::int64_t {
    const double v = std::stod(s);
    return std::llround(v * static_cast<double>(scale));
  };
  const std::int64_t lo = to_scaled(parts[0]);
  const std::int64_t hi = to_scaled(parts[1]);
  const std::int64_t step = to_scaled(parts[2]);
  if (step <= 0 || hi < lo) throw std::invalid_argument("grid requires lo <= hi and step > 0");

  RadiusGrid grid;
  for (std::int64_t v = lo; v <= hi; v += step) {
    grid.values.push_back(static_cast<double>(v) / static_cast<double>(scale));
    std::int64_t whole = v / scale;
    std::int64_t frac = v % scale;
    std::string label = std::to_string(whole);
    if (places > 0) {
      std::string f = std::to_string(frac);
      label += "." + std::string(places - f.size(), '0') + f;
    }
    grid.labels.push_back(label);
  }
  return grid;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& stdout_stream) {
  if (out_path.empty()) {
    stdout_stream << text;
    if (text.empty() || text.back() != '\n') stdout_stream << '\n';
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << text;
  }
}

struct CommonOptions {
  std::string out_path;
  bool csv = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Write output to a file instead of stdout");
    cmd->add_flag("--csv", csv, "Emit CSV (margin,probability,count) instead of JSON");
  }

  void write_result(const json& j, const std::map<int, double>& pmf,
                    const std::map<int, std::uint64_t>& hist, std::ostream& out) const {
    emit(csv ? result_to_csv(pmf, hist) : j.dump(2) + "\n", out_path, out);
  }
};

inline std::map<int, std::uint64_t> no_counts() { return {}; }

}  // namespace detail

/// Assemble and dispatch the command line. Writes results to `out`,
/// diagnostics to `err`. Returns the process exit code: 0 success,
/// 1 invalid input, 2 internal failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum parliament voting simulator"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed (default from QPARL_SEED if set)")
      ->envname("QPARL_SEED");
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker thread cap for Monte-Carlo runs")
      ->check(CLI::Range(1u, 256u));

  ParliamentConfig cfg;
  std::string measure_name = "theta-uniform";
  std::string scenario_path;

  auto add_config_options = [&](CLI::App* cmd, bool with_scenario) {
    cmd->fallthrough();  // let --seed/--threads appear after the subcommand
    cmd->add_option("--na", cfg.n_a, "Seats held by party A");
    cmd->add_option("--nb", cfg.n_b, "Seats held by party B");
    cmd->add_option("--ni", cfg.n_i, "Independent seats");
    cmd->add_option("--ra", cfg.r_a, "Free-will radius of party A")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--rb", cfg.r_b, "Free-will radius of party B")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--measure", measure_name, "Sampling measure")
        ->check(CLI::IsMember({"theta-uniform", "cap-uniform"}));
    if (with_scenario)
      cmd->add_option("--scenario", scenario_path, "Load a scenario JSON file (overrides flags)");
  };

  // exact
  auto* exact_cmd = app.add_subcommand("exact", "Exact margin distribution and pass probability");
  detail::CommonOptions exact_io;
  add_config_options(exact_cmd, true);
  exact_io.attach(exact_cmd);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo simulation of the voting round");
  detail::CommonOptions sim_io;
  std::uint64_t shots = 100000;
  std::string angle_mode_name = "per-shot";
  add_config_options(sim_cmd, true);
  sim_cmd->add_option("--shots", shots, "Number of shots")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--angle-mode", angle_mode_name, "Angle resampling regime")
      ->check(CLI::IsMember({"per-shot", "fixed"}));
  sim_io.attach(sim_cmd);

  // circuit-verify
  auto* circ_cmd = app.add_subcommand(
      "circuit-verify", "Check the counting circuit against the exact product law (N <= 8)");
  detail::CommonOptions circ_io;
  std::uint64_t circ_shots = 100000;
  std::string dump_path;
  add_config_options(circ_cmd, true);
  circ_cmd->add_option("--shots", circ_shots, "Number of shots")->check(CLI::PositiveNumber);
  circ_cmd->add_option("--dump", dump_path, "Also write the gate list to a file");
  circ_io.attach(circ_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Pass probability over a radius grid");
  std::string grid_text = "0:1:0.1";
  std::string vary = "both";
  std::string sweep_out;
  bool sweep_csv = false;
  add_config_options(sweep_cmd, false);
  sweep_cmd->add_option("--r-grid", grid_text, "Inclusive decimal grid lo:hi:step");
  sweep_cmd->add_option("--vary", vary, "Which radius follows the grid")
      ->check(CLI::IsMember({"both", "a", "b"}));
  sweep_cmd->add_option("--out", sweep_out, "Write output to a file instead of stdout");
  sweep_cmd->add_flag("--csv", sweep_csv, "Emit CSV (r,p_pass) instead of JSON");

  // game
  auto* game_cmd = app.add_subcommand("game", "Payoff matrix and equilibria of the stage game");
  game_cmd->fallthrough();
  GameParams gp;
  bool estimate = false;
  std::string game_out;
  game_cmd->add_option("--p", gp.p, "Baseline pass probability")->check(CLI::Range(0.0, 1.0));
  game_cmd->add_option("--epsilon", gp.epsilon, "Success increment of a lone autocrat")
      ->check(CLI::Range(0.0, 1.0));
  game_cmd->add_option("--reward", gp.reward, "Reward r for success");
  game_cmd->add_option("--cost", gp.cost, "Political cost c of the autocratic strategy");
  game_cmd->add_flag("--estimate", estimate,
                     "Estimate p and epsilon from the parliament given by --na/--nb/--ni/--ra/--rb");
  game_cmd->add_option("--na", cfg.n_a, "Seats held by party A");
  game_cmd->add_option("--nb", cfg.n_b, "Seats held by party B");
  game_cmd->add_option("--ni", cfg.n_i, "Independent seats");
  game_cmd->add_option("--ra", cfg.r_a, "Free-will radius of party A")->check(CLI::Range(0.0, 1.0));
  game_cmd->add_option("--rb", cfg.r_b, "Free-will radius of party B")->check(CLI::Range(0.0, 1.0));
  game_cmd->add_option("--measure", measure_name, "Sampling measure")
      ->check(CLI::IsMember({"theta-uniform", "cap-uniform"}));
  game_cmd->add_option("--out", game_out, "Write output to a file instead of stdout");

  // reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "Run a canned paper-figure configuration");
  repro_cmd->fallthrough();
  detail::CommonOptions repro_io;
  std::string figure_id;
  std::string engine = "exact";
  std::uint64_t repro_shots = 1000000;
  bool list_targets = false;
  repro_cmd->add_option("figure", figure_id, "Figure id (fig3 ... fig28)");
  repro_cmd->add_option("--engine", engine, "Engine to run")
      ->check(CLI::IsMember({"exact", "mc"}));
  repro_cmd->add_option("--shots", repro_shots, "Shots for the mc engine")
      ->check(CLI::PositiveNumber);
  repro_cmd->add_flag("--list", list_targets, "List available figure targets");
  repro_io.attach(repro_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends print through CLI11's machinery
      std::ostringstream help;
      const int code = app.exit(e, help, help);
      out << help.str();
      return code;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const AngleMeasure measure = measure_from_string(measure_name);

  auto load_scenario = [&](SamplingPolicy& policy, std::uint64_t& shot_count) {
    if (scenario_path.empty()) return;
    std::ifstream file(scenario_path);
    if (!file) throw std::invalid_argument("cannot open scenario file: " + scenario_path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    const Scenario sc = scenario_from_text(buffer.str());
    cfg = sc.config;
    policy = sc.policy;
    shot_count = sc.shots;
  };

  try {
    if (exact_cmd->parsed()) {
      SamplingPolicy policy{AngleMode::PerShot, measure, seed};
      std::uint64_t ignored = 0;
      load_scenario(policy, ignored);
      const MarginDistribution dist = exact_margin_distribution(cfg, policy.measure);
      exact_io.write_result(result_to_json(dist), dist.pmf(), detail::no_counts(), out);
      return 0;
    }

    if (sim_cmd->parsed()) {
      SamplingPolicy policy{angle_mode_from_string(angle_mode_name), measure, seed};
      load_scenario(policy, shots);
      const SimulationResult result = monte_carlo(cfg, policy, shots, threads);
      const MarginDistribution dist = result.to_distribution(cfg.total());
      sim_io.write_result(result_to_json(result, cfg.total()), dist.pmf(), result.histogram, out);
      return 0;
    }

    if (circ_cmd->parsed()) {
      SamplingPolicy policy{AngleMode::FixedPerRun, measure, seed};
      load_scenario(policy, circ_shots);
      const CircuitVerifyReport report = circuit_verify(cfg, policy, circ_shots);
      if (!dump_path.empty()) {
        RandomStream angle_rng = RandomStream::substream(policy.seed, 0);
        std::vector<VoteAngles> angles;
        for (const auto& cls : cfg.voter_classes())
          angles.push_back(sample_vote_angles(cls, policy.measure, angle_rng));
        detail::emit(dump_gates(build_parliament_circuit(angles)), dump_path, out);
      }
      std::map<int, double> pmf;
      for (const auto& [margin, count] : report.histogram)
        pmf[margin] = static_cast<double>(count) / static_cast<double>(report.shots);
      circ_io.write_result(result_to_json(report), pmf, report.histogram, out);
      return report.pass ? 0 : 1;
    }

    if (sweep_cmd->parsed()) {
      const detail::RadiusGrid grid = detail::parse_grid(grid_text);
      json series = json::array();
      std::string csv = "r,p_pass\n";
      for (std::size_t i = 0; i < grid.values.size(); ++i) {
        ParliamentConfig point = cfg;
        if (vary == "both" || vary == "a") point.r_a = grid.values[i];
        if (vary == "both" || vary == "b") point.r_b = grid.values[i];
        const double p = p_pass(exact_margin_distribution(point, measure));
        series.push_back(json{{"r", grid.labels[i]}, {"p_pass", p}});
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s,%.17g\n", grid.labels[i].c_str(), p);
        csv += buf;
      }
      const json j{{"engine", "exact"}, {"vary", vary}, {"series", series}};
      detail::emit(sweep_csv ? csv : j.dump(2) + "\n", sweep_out, out);
      return 0;
    }

    if (game_cmd->parsed()) {
      std::optional<ParamEstimate> est;
      if (estimate) {
        est = estimate_params(cfg, measure);
        gp.p = est->p;
        gp.epsilon = est->epsilon;
        if (est->degenerate)
          err << "warning: both autocratic increments are zero; the game reduces to a "
                 "cost-only comparison (epsilon = 0)\n";
      }
      const PayoffMatrix matrix = payoff_matrix(gp);
      const json j = game_report_to_json(gp, matrix, pure_equilibria(matrix),
                                         mixed_equilibrium(matrix), est);
      detail::emit(j.dump(2) + "\n", game_out, out);
      return 0;
    }

    if (repro_cmd->parsed()) {
      const auto& registry = figure_registry();
      if (list_targets) {
        json j = json::object();
        for (const auto& [id, target] : registry) j[id] = target.description;
        detail::emit(j.dump(2) + "\n", repro_io.out_path, out);
        return 0;
      }
      const auto it = registry.find(figure_id);
      if (it == registry.end()) {
        err << "error: unknown figure id \"" << figure_id
            << "\" (run `reproduce --list` for the available targets)\n";
        return 1;
      }
      const ParliamentConfig& target = it->second.config;
      if (engine == "exact") {
        const MarginDistribution dist = exact_margin_distribution(target, measure);
        json j = result_to_json(dist);
        j["figure"] = figure_id;
        j["description"] = it->second.description;
        repro_io.write_result(j, dist.pmf(), detail::no_counts(), out);
      } else {
        SamplingPolicy policy{AngleMode::PerShot, measure, seed};
        const SimulationResult result = monte_carlo(target, policy, repro_shots, threads);
        const MarginDistribution dist = result.to_distribution(target.total());
        json j = result_to_json(result, target.total());
        j["figure"] = figure_id;
        j["description"] = it->second.description;
        repro_io.write_result(j, dist.pmf(), result.histogram, out);
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::parse_error& e) {
    err << "error: scenario JSON: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace qparl::cli
