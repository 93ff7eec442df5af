#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qparl/qstate.hpp"
#include "qparl/rng.hpp"

namespace qparl {

enum class VoterKind { PartyA, PartyB, Independent };

/// How the elevation angle is drawn inside the allowed interval.
/// ThetaUniform: theta itself uniform. CapUniform: cos(theta) uniform,
/// i.e. area-uniform over the spherical zone.
enum class AngleMeasure { ThetaUniform, CapUniform };

/// Party affiliation plus the party's free-will radius. Independents carry
/// no radius; their vote ranges over the whole sphere.
class VoterClass {
 public:
  static VoterClass party_a(double radius) { return VoterClass(VoterKind::PartyA, radius); }
  static VoterClass party_b(double radius) { return VoterClass(VoterKind::PartyB, radius); }
  static VoterClass independent() { return VoterClass(VoterKind::Independent, 1.0); }

  VoterKind kind() const { return kind_; }
  double radius() const { return radius_; }

 private:
  VoterClass(VoterKind kind, double radius) : kind_(kind), radius_(radius) {
    if (kind != VoterKind::Independent && !(radius >= 0.0 && radius <= 1.0))
      throw std::invalid_argument("VoterClass: free-will radius must lie in [0, 1], got " +
                                  std::to_string(radius));
  }

  VoterKind kind_;
  double radius_;
};

struct ThetaInterval {
  double lo;
  double hi;
};

/// Elevation-angle interval a voter of the given class may use.
/// Party A: sin(theta/2) <= r_A, so theta in [0, 2 asin r_A].
/// Party B: cos(theta/2) <= r_B, so theta in [2 acos r_B, pi].
/// (The constraint anchored at |no> bounds theta from below; the inequality
/// direction follows from the trace-distance derivation.)
inline ThetaInterval allowed_interval(const VoterClass& cls) {
  switch (cls.kind()) {
    case VoterKind::PartyA:
      return {0.0, 2.0 * std::asin(cls.radius())};
    case VoterKind::PartyB:
      return {2.0 * std::acos(cls.radius()), kPi};
    case VoterKind::Independent:
      return {0.0, kPi};
  }
  throw std::logic_error("allowed_interval: unreachable");
}

/// Angle triple for the general single-qubit gate U(theta, phi, lambda).
/// lambda is a global phase, physically unobservable.
struct VoteAngles {
  double theta;
  double phi;
  double lambda;
};

/// Draw a vote state for the class under the given measure. phi is uniform
/// on [0, 2*pi). The returned state satisfies the party constraint exactly:
/// boundary draws are nudged inward until distance_to_yes/no <= radius holds
/// in floating point, never just within a tolerance.
inline PureState sample_vote(const VoterClass& cls, AngleMeasure measure, RandomStream& rng) {
  const ThetaInterval iv = allowed_interval(cls);
  double theta;
  if (iv.lo == iv.hi) {
    theta = iv.lo;
  } else if (measure == AngleMeasure::ThetaUniform) {
    theta = rng.uniform(iv.lo, iv.hi);
  } else {
    const double c_hi = std::cos(iv.hi);
    const double c_lo = std::cos(iv.lo);
    const double c = rng.uniform(c_hi, c_lo);
    theta = std::acos(std::fmin(1.0, std::fmax(-1.0, c)));
  }
  theta = std::fmin(iv.hi, std::fmax(iv.lo, theta));
  if (cls.kind() == VoterKind::PartyA) {
    while (std::sin(0.5 * theta) > cls.radius()) theta = std::nextafter(theta, 0.0);
  } else if (cls.kind() == VoterKind::PartyB) {
    while (std::sin(0.5 * (kPi - theta)) > cls.radius()) theta = std::nextafter(theta, kPi);
  }
  return PureState(theta, rng.uniform() * kTwoPi);
}

/// Same draw extended with the unobservable global phase for circuit use.
inline VoteAngles sample_vote_angles(const VoterClass& cls, AngleMeasure measure,
                                     RandomStream& rng) {
  const PureState s = sample_vote(cls, measure, rng);
  return {s.theta(), s.phi(), rng.uniform() * kTwoPi};
}

/// Born-rule probability of measuring |yes>: cos^2(theta/2). Independent of phi.
inline double yes_probability(const PureState& state) {
  const double a = distance_to_no(state);
  return a * a;
}

/// Closed-form expectation of yes_probability over sample_vote.
///
/// ThetaUniform over [lo, hi]:  1/2 + cos((hi+lo)/2) sin((hi-lo)/2) / (hi-lo),
/// written in the cancellation-free product form; the degenerate interval
/// reduces to cos^2(lo/2).
/// CapUniform: cos(theta) uniform on [cos hi, cos lo], giving
/// 1/2 + (cos lo + cos hi)/4.
inline double marginal_yes_probability(const VoterClass& cls, AngleMeasure measure) {
  const ThetaInterval iv = allowed_interval(cls);
  const double width = iv.hi - iv.lo;
  if (width == 0.0) return 0.5 * (1.0 + std::cos(iv.lo));
  if (measure == AngleMeasure::ThetaUniform)
    return 0.5 + std::cos(0.5 * (iv.hi + iv.lo)) * std::sin(0.5 * width) / width;
  return 0.5 + 0.25 * (std::cos(iv.lo) + std::cos(iv.hi));
}

}  // namespace qparl
