#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qparl/qstate.hpp"
#include "qparl/rng.hpp"

namespace qparl {

/// 2x2 complex matrix, row major.
struct Mat2 {
  std::array<complexd, 4> m{};

  complexd& operator()(int r, int c) { return m[2 * r + c]; }
  complexd operator()(int r, int c) const { return m[2 * r + c]; }

  Mat2 operator*(const Mat2& o) const {
    Mat2 out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        out(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c);
    return out;
  }

  Mat2 operator*(complexd s) const {
    Mat2 out = *this;
    for (auto& v : out.m) v *= s;
    return out;
  }

  double max_abs_diff(const Mat2& o) const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::fmax(d, std::abs(m[i] - o.m[i]));
    return d;
  }

  bool is_unitary(double tol = 1e-10) const {
    // U^dagger U == I
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        complexd v = std::conj((*this)(0, r)) * (*this)(0, c) +
                     std::conj((*this)(1, r)) * (*this)(1, c);
        if (std::abs(v - (r == c ? 1.0 : 0.0)) > tol) return false;
      }
    return true;
  }
};

/// General single-qubit gate:
///   [ cos(t/2)              -e^{i l} sin(t/2)      ]
///   [ e^{i p} sin(t/2)       e^{i(p+l)} cos(t/2)   ]
inline Mat2 u_gate(double theta, double phi, double lambda) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Mat2 u;
  u(0, 0) = c;
  u(0, 1) = -std::polar(s, lambda);
  u(1, 0) = std::polar(s, phi);
  u(1, 1) = std::polar(c, phi + lambda);
  return u;
}

inline Mat2 ry_gate(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Mat2 g;
  g(0, 0) = c;
  g(0, 1) = -s;
  g(1, 0) = s;
  g(1, 1) = c;
  return g;
}

inline Mat2 rz_gate(double theta) {
  Mat2 g;
  g(0, 0) = std::polar(1.0, -0.5 * theta);
  g(1, 1) = std::polar(1.0, 0.5 * theta);
  return g;
}

inline Mat2 hadamard_gate() {
  const double h = std::numbers::sqrt2 / 2.0;
  Mat2 g;
  g(0, 0) = h;
  g(0, 1) = h;
  g(1, 0) = h;
  g(1, 1) = -h;
  return g;
}

/// ZY Euler angles: U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZYDecomposition {
  double alpha;
  double beta;
  double gamma;
  double delta;
};

/// Decompose U(theta, phi, lambda) into rotation gates plus a phase.
/// Matching entries gives the closed form directly.
inline ZYDecomposition zy_decompose(double theta, double phi, double lambda) {
  return {0.5 * (phi + lambda), phi, theta, lambda};
}

inline Mat2 zy_reconstruct(const ZYDecomposition& d) {
  return (rz_gate(d.beta) * ry_gate(d.gamma) * rz_gate(d.delta)) * std::polar(1.0, d.alpha);
}

enum class GateKind { U, RotateY, RotateZ, Hadamard, ControlledPhase, Swap };

/// One gate instance: kind, parameters, target qubit(s).
struct GateSpec {
  GateKind kind;
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
  int q0 = -1, q1 = -1;

  static GateSpec u(double theta, double phi, double lambda, int target) {
    return {GateKind::U, theta, phi, lambda, target, -1};
  }
  static GateSpec ry(double theta, int target) {
    return {GateKind::RotateY, theta, 0, 0, target, -1};
  }
  static GateSpec rz(double theta, int target) {
    return {GateKind::RotateZ, theta, 0, 0, target, -1};
  }
  static GateSpec hadamard(int target) { return {GateKind::Hadamard, 0, 0, 0, target, -1}; }
  static GateSpec cphase(double angle, int a, int b) {
    return {GateKind::ControlledPhase, angle, 0, 0, a, b};
  }
  static GateSpec swap(int a, int b) { return {GateKind::Swap, 0, 0, 0, a, b}; }
};

/// Single-qubit matrix of a one-qubit gate spec.
inline Mat2 single_qubit_matrix(const GateSpec& g) {
  switch (g.kind) {
    case GateKind::U: return u_gate(g.p0, g.p1, g.p2);
    case GateKind::RotateY: return ry_gate(g.p0);
    case GateKind::RotateZ: return rz_gate(g.p0);
    case GateKind::Hadamard: return hadamard_gate();
    default:
      throw std::invalid_argument("single_qubit_matrix: gate acts on two qubits");
  }
}

/// Dense statevector over qubit_count qubits. Qubit q addresses bit q of the
/// basis index (qubit 0 is the least significant bit). Registers are lists of
/// qubit indices in little-endian order.
class StateVector {
 public:
  /// Practical ceiling; a 26-qubit state is ~1 GiB of amplitudes.
  static constexpr int kMaxQubits = 26;

  explicit StateVector(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1 || qubit_count > kMaxQubits)
      throw std::invalid_argument("StateVector: qubit count must lie in [1, " +
                                  std::to_string(kMaxQubits) + "], got " +
                                  std::to_string(qubit_count));
    amplitudes_.assign(std::size_t{1} << qubit_count, complexd{});
    amplitudes_[0] = 1.0;
  }

  int qubit_count() const { return qubit_count_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const complexd> amplitudes() const { return amplitudes_; }
  complexd amplitude(std::size_t index) const { return amplitudes_.at(index); }

  double norm_squared() const {
    double n = 0.0;
    for (const auto& a : amplitudes_) n += std::norm(a);
    return n;
  }

  void apply_single_qubit(const Mat2& u, int target) {
    check_qubit(target);
    const std::size_t stride = std::size_t{1} << target;
    const std::size_t dim = amplitudes_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const complexd a0 = amplitudes_[i];
        const complexd a1 = amplitudes_[i + stride];
        amplitudes_[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amplitudes_[i + stride] = u(1, 0) * a0 + u(1, 1) * a1;
      }
    }
  }

  /// Phase e^{i angle} on basis states where both qubits are 1. Symmetric.
  void apply_controlled_phase(double angle, int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("controlled phase: qubits must differ");
    const complexd phase = std::polar(1.0, angle);
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i)
      if ((i & mask) == mask) amplitudes_[i] *= phase;
  }

  void apply_swap(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("swap: qubits must differ");
    const std::size_t bit_a = std::size_t{1} << a;
    const std::size_t bit_b = std::size_t{1} << b;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
      const bool has_a = (i & bit_a) != 0;
      const bool has_b = (i & bit_b) != 0;
      if (has_a && !has_b) std::swap(amplitudes_[i], amplitudes_[(i ^ bit_a) | bit_b]);
    }
  }

  void apply(const GateSpec& g) {
    switch (g.kind) {
      case GateKind::ControlledPhase: apply_controlled_phase(g.p0, g.q0, g.q1); return;
      case GateKind::Swap: apply_swap(g.q0, g.q1); return;
      default: apply_single_qubit(single_qubit_matrix(g), g.q0); return;
    }
  }

  void apply(std::span<const GateSpec> gates) {
    for (const auto& g : gates) apply(g);
  }

  /// Marginal distribution of a register's value: summed squared amplitudes
  /// grouped by the register bits, all other qubits traced out.
  std::vector<double> register_distribution(std::span<const int> reg) const {
    check_register(reg);
    std::vector<double> probs(std::size_t{1} << reg.size(), 0.0);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
      const double w = std::norm(amplitudes_[i]);
      if (w != 0.0) probs[register_value(i, reg)] += w;
    }
    return probs;
  }

  std::size_t register_value(std::size_t basis_index, std::span<const int> reg) const {
    std::size_t v = 0;
    for (std::size_t k = 0; k < reg.size(); ++k)
      v |= ((basis_index >> reg[k]) & 1u) << k;
    return v;
  }

  void check_qubit(int q) const {
    if (q < 0 || q >= qubit_count_)
      throw std::out_of_range("qubit index " + std::to_string(q) + " out of range [0, " +
                              std::to_string(qubit_count_) + ")");
  }

  void check_register(std::span<const int> reg) const {
    std::uint64_t seen = 0;
    for (int q : reg) {
      check_qubit(q);
      if (seen & (std::uint64_t{1} << q))
        throw std::invalid_argument("register qubits must be distinct");
      seen |= std::uint64_t{1} << q;
    }
  }

 private:
  int qubit_count_;
  std::vector<complexd> amplitudes_;
};

namespace detail {

inline void qft_gates(std::span<const int> reg, bool inverse, std::vector<GateSpec>& out) {
  const int m = static_cast<int>(reg.size());
  std::vector<GateSpec> gates;
  // Standard circuit for |x> -> 2^{-m/2} sum_y exp(2*pi*i x y / 2^m) |y>
  // on a little-endian register, bit-reversal swaps included.
  for (int j = m - 1; j >= 0; --j) {
    gates.push_back(GateSpec::hadamard(reg[j]));
    for (int k = j - 1; k >= 0; --k)
      gates.push_back(GateSpec::cphase(kPi / static_cast<double>(1 << (j - k)), reg[k], reg[j]));
  }
  for (int j = 0; j < m / 2; ++j) gates.push_back(GateSpec::swap(reg[j], reg[m - 1 - j]));
  if (inverse) {
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      GateSpec g = *it;
      if (g.kind == GateKind::ControlledPhase) g.p0 = -g.p0;
      out.push_back(g);
    }
  } else {
    out.insert(out.end(), gates.begin(), gates.end());
  }
}

}  // namespace detail

inline std::vector<GateSpec> qft_gates(std::span<const int> reg) {
  std::vector<GateSpec> out;
  detail::qft_gates(reg, false, out);
  return out;
}

inline std::vector<GateSpec> inverse_qft_gates(std::span<const int> reg) {
  std::vector<GateSpec> out;
  detail::qft_gates(reg, true, out);
  return out;
}

inline void qft(StateVector& sv, std::span<const int> reg) {
  sv.check_register(reg);
  sv.apply(qft_gates(reg));
}

inline void inverse_qft(StateVector& sv, std::span<const int> reg) {
  sv.check_register(reg);
  sv.apply(inverse_qft_gates(reg));
}

/// Gate sequence adding src into dst modulo 2^|dst| in the Fourier basis:
/// QFT(dst), one controlled phase 2*pi*2^{j+k}/2^|dst| per (src bit j, dst
/// bit k) pair with j+k < |dst|, inverse QFT(dst). Registers must be
/// disjoint; src may be narrower than dst.
inline std::vector<GateSpec> draper_add_gates(std::span<const int> src, std::span<const int> dst) {
  for (int s : src)
    for (int d : dst)
      if (s == d) throw std::invalid_argument("draper_add: registers must be disjoint");
  if (src.size() > dst.size())
    throw std::invalid_argument("draper_add: source register wider than destination");
  const int wd = static_cast<int>(dst.size());
  std::vector<GateSpec> out = qft_gates(dst);
  for (int j = 0; j < static_cast<int>(src.size()); ++j)
    for (int k = 0; k + j < wd; ++k)
      out.push_back(GateSpec::cphase(kTwoPi / static_cast<double>(1 << (wd - j - k)), src[j], dst[k]));
  std::vector<GateSpec> iqft = inverse_qft_gates(dst);
  out.insert(out.end(), iqft.begin(), iqft.end());
  return out;
}

inline void draper_add(StateVector& sv, std::span<const int> src, std::span<const int> dst) {
  sv.check_register(src);
  sv.check_register(dst);
  sv.apply(draper_add_gates(src, dst));
}

/// Sample basis outcomes of a register. Non-destructive: the state is read,
/// not collapsed. Returns value -> count with counts summing to shots.
inline std::map<std::size_t, std::uint64_t> sample_measurement(const StateVector& sv,
                                                               std::span<const int> reg,
                                                               std::uint64_t shots,
                                                               RandomStream& rng) {
  if (shots < 1) throw std::invalid_argument("sample_measurement: shots must be >= 1");
  const std::vector<double> probs = sv.register_distribution(reg);
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  std::map<std::size_t, std::uint64_t> hist;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    std::size_t v = static_cast<std::size_t>(it - cdf.begin());
    if (v >= probs.size()) v = probs.size() - 1;
    ++hist[v];
  }
  return hist;
}

}  // namespace qparl
