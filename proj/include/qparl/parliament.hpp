#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qparl/circuit.hpp"
#include "qparl/freewill.hpp"
#include "qparl/rng.hpp"

namespace qparl {

/// Seat counts and free-will radii of one parliament.
struct ParliamentConfig {
  int n_a = 0;
  int n_b = 0;
  int n_i = 0;
  double r_a = 0.0;
  double r_b = 0.0;

  int total() const { return n_a + n_b + n_i; }

  void validate() const {
    if (n_a < 0 || n_b < 0 || n_i < 0)
      throw std::invalid_argument("ParliamentConfig: seat counts must be nonnegative");
    if (total() < 1) throw std::invalid_argument("ParliamentConfig: parliament must have a seat");
    if (!(r_a >= 0.0 && r_a <= 1.0) || !(r_b >= 0.0 && r_b <= 1.0))
      throw std::invalid_argument("ParliamentConfig: radii must lie in [0, 1]");
  }

  /// Voter classes in canonical order: A block, B block, independents.
  std::vector<VoterClass> voter_classes() const {
    std::vector<VoterClass> classes;
    classes.reserve(total());
    for (int i = 0; i < n_a; ++i) classes.push_back(VoterClass::party_a(r_a));
    for (int i = 0; i < n_b; ++i) classes.push_back(VoterClass::party_b(r_b));
    for (int i = 0; i < n_i; ++i) classes.push_back(VoterClass::independent());
    return classes;
  }
};

enum class AngleMode { PerShot, FixedPerRun };

struct SamplingPolicy {
  AngleMode angle_mode = AngleMode::PerShot;
  AngleMeasure measure = AngleMeasure::ThetaUniform;
  std::uint64_t seed = 1;
};

/// PMF of the sum of independent Bernoulli trials, by iterative convolution.
inline std::vector<double> poisson_binomial(std::span<const double> probs) {
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("poisson_binomial: probability " + std::to_string(p) +
                                  " outside [0, 1]");
  std::vector<double> pmf{1.0};
  for (double p : probs) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

/// Probability mass over the yes-minus-no margin. Support is contained in
/// {-N, -N+2, ..., N}; the bill passes iff margin > 0, so a tie fails.
class MarginDistribution {
 public:
  MarginDistribution(int total_voters, std::map<int, double> pmf)
      : total_voters_(total_voters), pmf_(std::move(pmf)) {
    double sum = 0.0;
    for (const auto& [margin, prob] : pmf_) {
      if (std::abs(margin) > total_voters_ || (margin - total_voters_) % 2 != 0)
        throw std::invalid_argument("MarginDistribution: margin " + std::to_string(margin) +
                                    " impossible for " + std::to_string(total_voters_) + " voters");
      if (!(prob >= 0.0))
        throw std::invalid_argument("MarginDistribution: negative probability");
      sum += prob;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("MarginDistribution: probabilities sum to " +
                                  std::to_string(sum));
  }

  static MarginDistribution from_count_pmf(int total_voters, std::span<const double> count_pmf) {
    std::map<int, double> pmf;
    for (std::size_t k = 0; k < count_pmf.size(); ++k)
      if (count_pmf[k] != 0.0)
        pmf[2 * static_cast<int>(k) - total_voters] = count_pmf[k];
    return MarginDistribution(total_voters, std::move(pmf));
  }

  int total_voters() const { return total_voters_; }
  const std::map<int, double>& pmf() const { return pmf_; }

  double probability(int margin) const {
    const auto it = pmf_.find(margin);
    return it == pmf_.end() ? 0.0 : it->second;
  }

 private:
  int total_voters_;
  std::map<int, double> pmf_;
};

/// Pass probability: total mass on strictly positive margins.
inline double p_pass(const MarginDistribution& dist) {
  double total = 0.0;
  for (const auto& [margin, prob] : dist.pmf())
    if (margin > 0) total += prob;
  return total;
}

/// Exact margin law under per-shot resampling: each legislator is an
/// independent Bernoulli with the closed-form marginal yes-probability of
/// their class, so the yes-count is Poisson-binomial.
inline MarginDistribution exact_margin_distribution(const ParliamentConfig& config,
                                                    AngleMeasure measure = AngleMeasure::ThetaUniform) {
  config.validate();
  std::vector<double> probs;
  probs.reserve(config.total());
  for (const auto& cls : config.voter_classes())
    probs.push_back(marginal_yes_probability(cls, measure));
  return MarginDistribution::from_count_pmf(config.total(), poisson_binomial(probs));
}

struct SimulationResult {
  std::map<int, std::uint64_t> histogram;  // margin -> shot count
  std::uint64_t shots = 0;
  double p_pass = 0.0;
  double standard_error = 0.0;
  std::uint64_t seed = 0;

  MarginDistribution to_distribution(int total_voters) const {
    std::map<int, double> pmf;
    for (const auto& [margin, count] : histogram)
      pmf[margin] = static_cast<double>(count) / static_cast<double>(shots);
    return MarginDistribution(total_voters, std::move(pmf));
  }
};

namespace detail {

inline constexpr std::uint64_t kShotsPerBlock = 8192;

/// One block of shots on its own substream. Angle semantics:
/// PerShot draws fresh angles per legislator per shot; FixedPerRun receives
/// the per-run angles as fixed yes-probabilities.
inline void run_mc_block(const std::vector<VoterClass>& classes, AngleMeasure measure,
                         std::span<const double> fixed_probs, RandomStream rng,
                         std::uint64_t shots, int total,
                         std::map<int, std::uint64_t>& hist) {
  for (std::uint64_t s = 0; s < shots; ++s) {
    int count = 0;
    if (fixed_probs.empty()) {
      for (const auto& cls : classes) {
        const PureState vote = sample_vote(cls, measure, rng);
        if (rng.bernoulli(yes_probability(vote))) ++count;
      }
    } else {
      for (double p : fixed_probs)
        if (rng.bernoulli(p)) ++count;
    }
    ++hist[2 * count - total];
  }
}

}  // namespace detail

/// Monte-Carlo margin histogram. Shots are partitioned into fixed-size
/// blocks, each on a substream derived from (seed, block index), and the
/// integer histograms merge commutatively: the result is bit-identical for
/// any thread count.
inline SimulationResult monte_carlo(const ParliamentConfig& config, const SamplingPolicy& policy,
                                    std::uint64_t shots, unsigned threads = 1) {
  config.validate();
  if (shots < 1) throw std::invalid_argument("monte_carlo: shots must be >= 1");

  const int total = config.total();
  const std::vector<VoterClass> classes = config.voter_classes();

  std::vector<double> fixed_probs;
  if (policy.angle_mode == AngleMode::FixedPerRun) {
    RandomStream angle_rng = RandomStream::substream(policy.seed, 0);
    fixed_probs.reserve(classes.size());
    for (const auto& cls : classes)
      fixed_probs.push_back(yes_probability(sample_vote(cls, policy.measure, angle_rng)));
  }

  const std::uint64_t blocks = (shots + detail::kShotsPerBlock - 1) / detail::kShotsPerBlock;
  std::vector<std::map<int, std::uint64_t>> block_hists(blocks);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t b = begin; b < end; ++b) {
      const std::uint64_t lo = b * detail::kShotsPerBlock;
      const std::uint64_t n = std::min(detail::kShotsPerBlock, shots - lo);
      detail::run_mc_block(classes, policy.measure, fixed_probs,
                           RandomStream::substream(policy.seed, b + 1), n, total,
                           block_hists[b]);
    }
  };

  if (threads <= 1 || blocks <= 1) {
    run_range(0, blocks);
  } else {
    const unsigned workers = std::min<std::uint64_t>(threads, blocks);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = blocks * w / workers;
      const std::uint64_t end = blocks * (w + 1) / workers;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  SimulationResult result;
  result.shots = shots;
  result.seed = policy.seed;
  std::uint64_t passing = 0;
  for (const auto& hist : block_hists)
    for (const auto& [margin, count] : hist) {
      result.histogram[margin] += count;
      if (margin > 0) passing += count;
    }
  result.p_pass = static_cast<double>(passing) / static_cast<double>(shots);
  result.standard_error =
      std::sqrt(result.p_pass * (1.0 - result.p_pass) / static_cast<double>(shots));
  return result;
}

/// Outcome of checking the counting circuit against the product-Bernoulli law.
struct CircuitVerifyReport {
  int total_qubits = 0;
  int ancilla_qubits = 0;
  std::uint64_t shots = 0;
  double tv_distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::map<int, double> exact_pmf;             // margin -> probability
  std::map<int, std::uint64_t> histogram;      // margin -> shot count
  double circuit_p_pass = 0.0;
};

/// Budget for full-fidelity circuit verification. Larger parliaments belong
/// to the analytical engine.
inline constexpr int kMaxCircuitVoters = 8;

/// Build the counting circuit for angles fixed by the policy seed, sample
/// it, and compare the measured margin distribution against the
/// Poisson-binomial law of those same angles. The threshold is calibrated
/// for 1e5 shots.
inline CircuitVerifyReport circuit_verify(const ParliamentConfig& config,
                                          const SamplingPolicy& policy, std::uint64_t shots,
                                          double threshold = 0.01) {
  config.validate();
  if (shots < 1) throw std::invalid_argument("circuit_verify: shots must be >= 1");
  const int total = config.total();
  if (total > kMaxCircuitVoters)
    throw std::invalid_argument(
        "circuit_verify: " + std::to_string(total) + " voters exceed the statevector budget of " +
        std::to_string(kMaxCircuitVoters) + "; use the exact or Monte-Carlo engine instead");

  RandomStream angle_rng = RandomStream::substream(policy.seed, 0);
  std::vector<VoteAngles> angles;
  std::vector<double> yes_probs;
  for (const auto& cls : config.voter_classes()) {
    angles.push_back(sample_vote_angles(cls, policy.measure, angle_rng));
    yes_probs.push_back(yes_probability(PureState(angles.back().theta, angles.back().phi)));
  }

  const ParliamentCircuit circuit = build_parliament_circuit(angles);
  const StateVector sv = run_circuit(circuit);

  RandomStream shot_rng = RandomStream::substream(policy.seed, 1);
  const auto counts = sample_measurement(sv, circuit.output_register, shots, shot_rng);

  CircuitVerifyReport report;
  report.total_qubits = circuit.total_qubits();
  report.ancilla_qubits = circuit.ancilla_qubits;
  report.shots = shots;
  report.threshold = threshold;

  const std::vector<double> count_pmf = poisson_binomial(yes_probs);
  for (std::size_t k = 0; k < count_pmf.size(); ++k)
    report.exact_pmf[2 * static_cast<int>(k) - total] = count_pmf[k];

  std::uint64_t passing = 0;
  for (const auto& [value, count] : counts) {
    const int margin = 2 * static_cast<int>(value) - total;
    report.histogram[margin] += count;
    if (margin > 0) passing += count;
  }
  report.circuit_p_pass = static_cast<double>(passing) / static_cast<double>(shots);

  double tv = 0.0;
  for (const auto& [margin, prob] : report.exact_pmf) {
    const auto it = report.histogram.find(margin);
    const double emp =
        it == report.histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
    tv += std::abs(emp - prob);
  }
  for (const auto& [margin, count] : report.histogram)
    if (!report.exact_pmf.count(margin))
      tv += static_cast<double>(count) / static_cast<double>(shots);
  report.tv_distance = 0.5 * tv;
  report.pass = report.tv_distance < threshold;
  return report;
}

}  // namespace qparl
