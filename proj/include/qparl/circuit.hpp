#pragma once

#include <algorithm>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qparl/freewill.hpp"
#include "qparl/statevector.hpp"

namespace qparl {

/// The vote-counting circuit: a U-gate initialization layer over the voter
/// qubits, a bit-flip relabeling layer (|yes> contributes 1 to the count),
/// and a binary tree of QFT adders that accumulates the yes-count into the
/// output register.
struct ParliamentCircuit {
  int voter_qubits = 0;
  int ancilla_qubits = 0;
  std::vector<int> output_register;  // little-endian
  std::vector<GateSpec> gates;       // ordered layers, flattened

  int total_qubits() const { return voter_qubits + ancilla_qubits; }
};

/// Build the counting circuit for one parliament round.
///
/// Voters occupy qubits 0..N-1; ancillas are appended as the tree allocates
/// them. Each voter starts as a width-1 count register. Levels merge the
/// registers pairwise: the source is Draper-added into the destination
/// widened by one fresh carry qubit, so widths grow by one per level and the
/// final register holds the yes-count. A level's odd register is zero-padded
/// (bookkeeping only, no gates) so every merge joins equal-width registers,
/// mirroring the equal-width adder the construction is modeled on.
///
/// max_qubits bounds the ancilla budget; building a circuit whose total
/// qubit count exceeds it is an error.
inline ParliamentCircuit build_parliament_circuit(std::span<const VoteAngles> angles,
                                                  int max_qubits = 64) {
  const int n = static_cast<int>(angles.size());
  if (n < 1) throw std::invalid_argument("build_parliament_circuit: need at least one voter");

  ParliamentCircuit circuit;
  circuit.voter_qubits = n;

  // voter initialization layer: one U gate per voter qubit
  for (int i = 0; i < n; ++i)
    circuit.gates.push_back(GateSpec::u(angles[i].theta, angles[i].phi, angles[i].lambda, i));
  // relabel |yes> -> |1> so a yes-vote increments the count (X == U(pi, 0, pi))
  for (int i = 0; i < n; ++i) circuit.gates.push_back(GateSpec::u(kPi, 0.0, kPi, i));

  int next_qubit = n;
  auto allocate = [&](const char* what) {
    if (next_qubit >= max_qubits)
      throw std::invalid_argument(std::string("build_parliament_circuit: ancilla budget of ") +
                                  std::to_string(max_qubits) + " qubits exceeded allocating " + what);
    return next_qubit++;
  };

  std::vector<std::vector<int>> regs(n);
  for (int i = 0; i < n; ++i) regs[i] = {i};

  while (regs.size() > 1) {
    // equalize widths (zero-extension, gate-free)
    std::size_t width = 0;
    for (const auto& r : regs) width = std::max(width, r.size());
    for (auto& r : regs)
      while (r.size() < width) r.push_back(allocate("pad"));

    std::vector<std::vector<int>> next;
    for (std::size_t i = 0; i + 1 < regs.size(); i += 2) {
      std::vector<int> dst = regs[i + 1];
      dst.push_back(allocate("carry"));
      const auto added = draper_add_gates(regs[i], dst);
      circuit.gates.insert(circuit.gates.end(), added.begin(), added.end());
      next.push_back(std::move(dst));
    }
    if (regs.size() % 2 == 1) next.push_back(regs.back());
    regs = std::move(next);
  }

  circuit.output_register = regs.front();
  circuit.ancilla_qubits = next_qubit - n;
  return circuit;
}

/// Run the circuit from |0...0>.
inline StateVector run_circuit(const ParliamentCircuit& circuit) {
  StateVector sv(circuit.total_qubits());
  sv.apply(circuit.gates);
  return sv;
}

/// Plain-text gate list, one gate per line: name, parameters, targets.
inline std::string dump_gates(const ParliamentCircuit& circuit) {
  std::string out;
  char buf[160];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::U:
        out += "u " + num(g.p0) + " " + num(g.p1) + " " + num(g.p2) + " " + std::to_string(g.q0);
        break;
      case GateKind::RotateY:
        out += "ry " + num(g.p0) + " " + std::to_string(g.q0);
        break;
      case GateKind::RotateZ:
        out += "rz " + num(g.p0) + " " + std::to_string(g.q0);
        break;
      case GateKind::Hadamard:
        out += "h " + std::to_string(g.q0);
        break;
      case GateKind::ControlledPhase:
        out += "cp " + num(g.p0) + " " + std::to_string(g.q0) + " " + std::to_string(g.q1);
        break;
      case GateKind::Swap:
        out += "swap " + std::to_string(g.q0) + " " + std::to_string(g.q1);
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace qparl
