#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cantorlab/coding.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/rational.hpp"

namespace cantorlab {

/// The generator behind every walk: 64-bit Mersenne Twister (MT19937-64),
/// whose output sequence is fixed by the C++ standard.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of path `path_id` under the base seed: two SplitMix64 rounds over
/// (seed, path_id), so that every path can be replayed on its own.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t path_id);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Walk states and jumps must stay below this bound in absolute value.
inline constexpr std::int64_t kMaxWalkMagnitude = std::int64_t{1} << 62;

enum class WalkKind { CauchyZ, Folded, Dissipative };

std::string to_string(WalkKind kind);
/// Accepts "cauchy_Z", "folded", "dissipative".
WalkKind parse_walk_kind(std::string_view text);

struct WalkParams {
  WalkKind kind = WalkKind::Dissipative;
  /// Jump exponent for cauchy_Z and folded.
  Rational beta{3, 2};
  /// Measure parameter for dissipative; its jumps use beta = 2 alpha.
  Rational alpha{3, 4};
  std::uint64_t steps = 1000;
  std::uint64_t seed = 0;

  /// Rejects beta outside (1, 2) or alpha outside (1/2, 1); the closed
  /// right end (beta = 2, alpha = 1) is admitted with `allow_boundary`.
  void validate(bool allow_boundary = false) const;
  /// The exponent of the zeta jump law driving this walk.
  Rational jump_exponent() const { return kind == WalkKind::Dissipative ? 2 * alpha : beta; }
};

/// Symmetric zeta jumps: P(|J| = j) = j^-beta / zeta(beta), sign uniform.
/// Table inversion for |J| <= 2^16; beyond that a continuous Pareto proposal
/// rounded up to an integer, corrected by accept/reject so that the tail law
/// is exact.
class ZetaJumpSampler {
 public:
  static constexpr std::uint64_t kTableSize = std::uint64_t{1} << 16;

  explicit ZetaJumpSampler(const Rational& beta);
  /// Sampler for `beta`, built once per process.
  static std::shared_ptr<const ZetaJumpSampler> shared(const Rational& beta);

  /// Throws OverflowError if the magnitude reaches 2^62. The sign comes
  /// from the lowest bit of the first draw, which the uniform ignores.
  std::int64_t sample(Rng& rng) const;

  double beta() const { return beta_; }
  /// P(|J| <= 2^16).
  double head_mass() const { return head_mass_; }
  /// P(|J| <= j) for j <= 2^16.
  double cdf(std::uint64_t j) const { return j == 0 ? 0.0 : cdf_[j - 1]; }

 private:
  std::int64_t draw_tail(Rng& rng) const;

  Rational beta_exact_;
  double beta_;
  double head_mass_;
  std::vector<double> cdf_;
  std::vector<std::uint32_t> guide_;
};

/// Generates one walk step by step without storing it.
class WalkStepper {
 public:
  WalkStepper(const WalkParams& params, std::uint64_t path_seed);

  /// Advances one step and returns the new visible state.
  std::int64_t step();
  /// Moves the walk to `state` (hidden signed state included) without
  /// touching the generator.
  void reset(std::int64_t state);
  std::int64_t state() const { return visible_; }
  /// Jump drawn in the last step.
  std::int64_t last_jump() const { return jump_; }
  std::uint64_t time() const { return time_; }

 private:
  WalkKind kind_;
  std::shared_ptr<const ZetaJumpSampler> sampler_;
  Rng rng_;
  std::int64_t hidden_ = 0;
  std::int64_t visible_ = 0;
  std::int64_t jump_ = 0;
  std::uint64_t time_ = 0;
};

struct WalkPath {
  WalkParams params;
  std::uint64_t path_id = 0;
  std::uint64_t path_seed = 0;
  /// states[0] = 0; states.size() = steps + 1.
  std::vector<std::int64_t> states;
  /// jumps[i] is the zeta jump drawn to go from states[i] to states[i+1].
  std::vector<std::int64_t> jumps;

  /// The first n states after the start as a word (dissipative paths only).
  AdmissibleWord prefix_word(std::size_t n) const;
};

/// Path `path_id` of the experiment (params.seed, path_id).
WalkPath simulate(const WalkParams& params, std::uint64_t path_id);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = all
/// hardware threads). Callers write results into per-index slots, so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Largest |P_folded(m, l) - P_X(m, l)| over 0 <= m, l <= M, where the
/// folded kernel is obtained by summing the jump law over the preimages
/// {j != 0 : |m + j| = l} and P_X is the kernel of X^(beta/2).
Interval folded_kernel_identity(const Rational& beta, std::int64_t M, long precision = kDefaultPrecision);

struct TransienceReport {
  struct Checkpoint {
    std::uint64_t t = 0;
    /// X_t over paths at the levels of `quantile_levels`.
    std::vector<double> quantiles;
    /// Fraction of paths with X_s = 0 for some s in [t, steps].
    double zero_visit_fraction = 0;
    /// Per threshold h: fraction of paths with min_{s in [t, steps]} X_s >= h.
    std::vector<double> min_at_least;
  };
  WalkParams params;
  std::uint64_t paths = 0;
  std::vector<double> quantile_levels;
  std::vector<std::int64_t> thresholds;
  std::vector<Checkpoint> checkpoints;
  std::vector<std::uint64_t> path_seeds;
};

TransienceReport transience_stats(const WalkParams& params, std::uint64_t paths,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const std::vector<std::int64_t>& thresholds = {1, 10, 100, 1000},
                                  unsigned threads = 0);

/// P(|J| >= c) = sum_{k >= c} k^-beta / zeta(beta) for the symmetric zeta
/// jump J, as a rigorous enclosure.
Interval jump_tail_prob(const Rational& beta, const BigInt& c, long precision);

struct TailProbability {
  /// Smallest integer jump size counted.
  BigInt threshold;
  Interval prob;
  /// Integral bracket of the same sum, looser than `prob`.
  Interval integral_lo;
  Interval integral_hi;
  /// "convergent", "divergent (harmonic comparison)" or "divergent" for
  /// sum_n p_n, decided by comparing gamma (beta - 1) with 1.
  std::string summability;
};

/// p_n = P(|Y_n - Y_{n-1}| >= n^gamma).
TailProbability increment_tail_prob(const Rational& beta, const Rational& gamma, std::uint64_t n,
                                    long precision = kDefaultPrecision);

/// Verdict on sum_n n^-(gamma (beta - 1)).
std::string summability_verdict(const Rational& beta, const Rational& gamma);

/// Jump thresholds floor(n^gamma) for n = 0 .. steps - 1 (saturated at
/// 2^62), shared by all paths of an envelope experiment.
std::vector<std::int64_t> envelope_thresholds(const Rational& gamma, std::uint64_t steps);

/// Number of n >= n0 with |k_{n+1} - k_n| > n^gamma along the path.
std::uint64_t gamma_envelope_violations(const WalkPath& path, const Rational& gamma, std::uint64_t n0);
std::uint64_t gamma_envelope_violations(const std::vector<std::int64_t>& states,
                                        const std::vector<std::int64_t>& thresholds, std::uint64_t n0);

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). `values` is taken by value and sorted.
double quantile(std::vector<double> values, double level);

}  // namespace cantorlab
