#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qparl {

using complexd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A single-qubit pure state |psi> = cos(theta/2)|yes> + e^{i phi} sin(theta/2)|no>,
/// identified by its Bloch-sphere elevation and azimuth.
class PureState {
 public:
  PureState(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!(theta >= 0.0 && theta <= kPi))
      throw std::invalid_argument("PureState: theta must lie in [0, pi], got " + std::to_string(theta));
    if (!(phi >= 0.0 && phi < kTwoPi))
      throw std::invalid_argument("PureState: phi must lie in [0, 2*pi), got " + std::to_string(phi));
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// Amplitude on |yes>. Real and nonnegative in this parametrization.
  double amplitude_yes() const { return std::sin(0.5 * (kPi - theta_)); }

  /// Amplitude on |no>.
  complexd amplitude_no() const {
    return std::polar(std::sin(0.5 * theta_), phi_);
  }

 private:
  double theta_;
  double phi_;
};

/// 2x2 Hermitian, positive, unit-trace matrix. Entries are validated on
/// construction; operations downstream may assume a well-formed state.
class DensityMatrix {
 public:
  DensityMatrix(complexd m00, complexd m01, complexd m10, complexd m11)
      : m00_(m00), m01_(m01), m10_(m10), m11_(m11) {
    constexpr double tol = 1e-12;
    if (std::abs(m00.imag()) > tol || std::abs(m11.imag()) > tol ||
        std::abs(m01 - std::conj(m10)) > tol)
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(m00.real() + m11.real() - 1.0) > tol)
      throw std::invalid_argument("DensityMatrix: trace must equal 1");
    // Hermitian 2x2 eigenvalues: mean +/- sqrt(((m00-m11)/2)^2 + |m01|^2)
    const double mean = 0.5 * (m00.real() + m11.real());
    const double disc = std::hypot(0.5 * (m00.real() - m11.real()), std::abs(m01));
    if (mean - disc < -tol)
      throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }

  complexd at(int row, int col) const {
    return row == 0 ? (col == 0 ? m00_ : m01_) : (col == 0 ? m10_ : m11_);
  }

 private:
  complexd m00_, m01_, m10_, m11_;
};

/// Projector |psi><psi| of a pure state.
inline DensityMatrix density_of(const PureState& state) {
  const double a = state.amplitude_yes();
  const complexd b = state.amplitude_no();
  return DensityMatrix(a * a, a * std::conj(b), b * a, std::norm(b));
}

/// Trace distance (1/2) tr|rho - sigma|, evaluated as half the sum of the
/// absolute eigenvalues of the Hermitian difference. Exact for 2x2.
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double d00 = rho.at(0, 0).real() - sigma.at(0, 0).real();
  const double d11 = rho.at(1, 1).real() - sigma.at(1, 1).real();
  const complexd d01 = rho.at(0, 1) - sigma.at(0, 1);
  const double mean = 0.5 * (d00 + d11);
  const double disc = std::hypot(0.5 * (d00 - d11), std::abs(d01));
  return 0.5 * (std::abs(mean + disc) + std::abs(mean - disc));
}

/// Trace distance from |yes>, closed form sin(theta/2).
inline double distance_to_yes(const PureState& state) {
  return std::sin(0.5 * state.theta());
}

/// Trace distance from |no>, closed form cos(theta/2). Evaluated as
/// sin((pi - theta)/2) so the pole theta = pi yields exactly 0.
inline double distance_to_no(const PureState& state) {
  return std::sin(0.5 * (kPi - state.theta()));
}

}  // namespace qparl
