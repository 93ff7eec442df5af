#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "qparl/circuit.hpp"
#include "qparl/parliament.hpp"

using namespace qparl;

namespace {

std::vector<VoteAngles> all_yes(int n) { return std::vector<VoteAngles>(n, VoteAngles{0, 0, 0}); }

std::vector<VoteAngles> random_angles(int n, RandomStream& rng) {
  std::vector<VoteAngles> angles;
  for (int i = 0; i < n; ++i)
    angles.push_back({rng.uniform(0.0, kPi), rng.uniform() * kTwoPi, rng.uniform() * kTwoPi});
  return angles;
}

}  // namespace

TEST_CASE("layout: smallest tree") {
  const ParliamentCircuit c = build_parliament_circuit(all_yes(2));
  CHECK(c.voter_qubits == 2);
  CHECK(c.output_register.size() == 2);  // one adder layer, width-2 output
  CHECK(c.ancilla_qubits == 1);
  // init layer has exactly one U gate per voter qubit
  REQUIRE(c.gates.size() >= 4);
  for (int i = 0; i < 2; ++i) {
    CHECK(c.gates[i].kind == GateKind::U);
    CHECK(c.gates[i].q0 == i);
  }
}

TEST_CASE("layout: growth across voter counts") {
  struct Expect {
    int n, output_width, ancillas;
  };
  // widths grow one per tree level; ancillas = (n-1) carries + one pad per
  // level whose leftover register is narrower than the level width
  for (const Expect e : {Expect{1, 1, 0}, Expect{2, 2, 1}, Expect{3, 3, 3}, Expect{4, 3, 3},
                         Expect{5, 4, 6}, Expect{6, 4, 6}, Expect{7, 4, 7}, Expect{8, 4, 7},
                         Expect{14, 5, 14}}) {
    const ParliamentCircuit c = build_parliament_circuit(all_yes(e.n));
    INFO("n = " << e.n);
    CHECK(c.voter_qubits == e.n);
    CHECK(static_cast<int>(c.output_register.size()) == e.output_width);
    CHECK(c.ancilla_qubits == e.ancillas);
  }
}

TEST_CASE("the 14-seat circuit measures five qubits") {
  const ParliamentCircuit c = build_parliament_circuit(all_yes(14));
  CHECK(c.voter_qubits == 14);
  CHECK(c.output_register.size() == 5);
  int u_layer = 0;
  while (u_layer < static_cast<int>(c.gates.size()) && c.gates[u_layer].kind == GateKind::U)
    ++u_layer;
  CHECK(u_layer == 28);  // N init gates + N relabel gates, all expressed as U
}

TEST_CASE("ancilla budget is enforced") {
  CHECK_THROWS_AS(build_parliament_circuit(all_yes(14), 20), std::invalid_argument);
  CHECK_NOTHROW(build_parliament_circuit(all_yes(14), 28));
}

TEST_CASE("all-yes parliament counts deterministically") {
  for (int n : {1, 2, 3, 4, 5, 6}) {
    const ParliamentCircuit c = build_parliament_circuit(all_yes(n));
    const StateVector sv = run_circuit(c);
    const auto probs = sv.register_distribution(c.output_register);
    REQUIRE(probs[static_cast<std::size_t>(n)] == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("all-no parliament counts zero") {
  std::vector<VoteAngles> angles(5, VoteAngles{kPi, 0, 0});
  const ParliamentCircuit c = build_parliament_circuit(angles);
  const StateVector sv = run_circuit(c);
  const auto probs = sv.register_distribution(c.output_register);
  CHECK(probs[0] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("norm survives the full circuit") {
  RandomStream rng(41);
  const ParliamentCircuit c = build_parliament_circuit(random_angles(6, rng));
  const StateVector sv = run_circuit(c);
  CHECK(std::abs(sv.norm_squared() - 1.0) < 1e-9);
}

TEST_CASE("measured counts follow the product-Bernoulli law") {
  // voters are never entangled with each other, so the count distribution
  // must equal the Poisson binomial of the per-voter yes probabilities
  RandomStream rng(42);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 3);
    const std::vector<VoteAngles> angles = random_angles(n, rng);
    std::vector<double> yes_probs;
    for (const auto& a : angles) yes_probs.push_back(yes_probability(PureState(a.theta, a.phi)));

    const ParliamentCircuit c = build_parliament_circuit(angles);
    const StateVector sv = run_circuit(c);
    const auto probs = sv.register_distribution(c.output_register);
    const std::vector<double> expected = poisson_binomial(yes_probs);

    for (std::size_t k = 0; k < probs.size(); ++k) {
      const double want = k < expected.size() ? expected[k] : 0.0;
      REQUIRE(std::abs(probs[k] - want) < 1e-9);
    }
  }
}

TEST_CASE("lambda is a global phase: count distribution is unchanged") {
  RandomStream rng(43);
  std::vector<VoteAngles> angles = random_angles(4, rng);
  const ParliamentCircuit base = build_parliament_circuit(angles);
  const auto base_probs = run_circuit(base).register_distribution(base.output_register);
  for (auto& a : angles) a.lambda = rng.uniform() * kTwoPi;
  const ParliamentCircuit shifted = build_parliament_circuit(angles);
  const auto shifted_probs = run_circuit(shifted).register_distribution(shifted.output_register);
  for (std::size_t k = 0; k < base_probs.size(); ++k)
    CHECK(std::abs(base_probs[k] - shifted_probs[k]) < 1e-9);
}

TEST_CASE("gate dump is stable and parseable") {
  std::vector<VoteAngles> angles{{0.5, 1.25, 0.0}, {2.5, 0.75, 3.0}};
  const ParliamentCircuit c = build_parliament_circuit(angles);
  const std::string dump = dump_gates(c);

  std::istringstream lines(dump);
  std::string name;
  std::size_t gate_lines = 0;
  while (lines >> name) {
    REQUIRE((name == "u" || name == "h" || name == "cp" || name == "swap" || name == "ry" ||
             name == "rz"));
    std::string rest;
    std::getline(lines, rest);
    ++gate_lines;
  }
  CHECK(gate_lines == c.gates.size());

  // golden list, derived by hand from the construction: U layer, relabel
  // layer, then add voter 0 into (voter 1, carry 2) in the Fourier basis
  const std::string golden =
      "u 0.5 1.25 0 0\n"
      "u 2.5 0.75 3 1\n"
      "u 3.1415926535897931 0 3.1415926535897931 0\n"
      "u 3.1415926535897931 0 3.1415926535897931 1\n"
      "h 2\n"
      "cp 1.5707963267948966 1 2\n"
      "h 1\n"
      "swap 1 2\n"
      "cp 1.5707963267948966 0 1\n"
      "cp 3.1415926535897931 0 2\n"
      "swap 1 2\n"
      "h 1\n"
      "cp -1.5707963267948966 1 2\n"
      "h 2\n";
  CHECK(dump == golden);
}
