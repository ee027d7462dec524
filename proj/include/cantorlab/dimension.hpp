#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cantorlab/coding.hpp"
#include "cantorlab/rational.hpp"
#include "cantorlab/walks.hpp"

namespace cantorlab {

struct DimRecord {
  std::uint64_t n = 0;
  /// log |I_{k1..kn}| = n log q - 2 sum log d_i.
  double log_len = 0;
  /// log mu_alpha(I_{k1..kn}) = -n log(2 zeta(2 alpha)) + sum log f_i.
  double log_mass = 0;
  double ratio = 0;
  /// log r_{n+1} / log r_n; 0 for the last record, which has no successor.
  double furstenberg_ratio = 0;
};

struct DimSeries {
  Rational alpha;
  std::uint64_t path_id = 0;
  /// records[i] describes the prefix of length i + 1.
  std::vector<DimRecord> records;

  std::size_t depth() const { return records.size(); }
  const DimRecord& at(std::uint64_t n) const { return records.at(n - 1); }
};

/// Log-length and log-mass of every prefix of `symbols` (an admissible
/// word). Precision up to 64 bits uses a double fast path; above that every
/// factor is evaluated in interval arithmetic and the midpoint is stored.
DimSeries dim_series(std::span<const Symbol> symbols, const Rational& alpha, long precision = 53);

/// The series of a dissipative walk path (states after the start).
DimSeries dim_series(const WalkPath& path, const Rational& alpha, long precision = 53);

/// max_{n >= n0} |log r_{n+1} / log r_n - 1|. Needs depth > n0 + 1.
double furstenberg_ratio_check(const DimSeries& series, std::uint64_t n0);

/// min_{n0 <= n <= N} ratio_n for every N in [n0, depth]; entry 0 is N = n0.
std::vector<double> running_infimum(const DimSeries& series, std::uint64_t n0);

/// min_{n <= n' <= depth} ratio_n' for every n in [n0, depth]: the finite
/// horizon version of inf_{n' >= n}, whose limit is the liminf.
std::vector<double> tail_infimum(const DimSeries& series, std::uint64_t n0);

struct LambdaSample {
  double s = 0;
  /// Power-iteration estimate of the spectral radius of T_s.
  double lambda = 0;
  /// Collatz-Wielandt bounds min_i (T v)_i / v_i <= lambda <= max_i.
  double lambda_lo = 0;
  double lambda_hi = 0;
  std::uint64_t iterations = 0;
};

struct PressureEstimate {
  std::int64_t cutoff = 0;
  double tolerance = 0;
  /// Final bisection bracket and its midpoint.
  double s_lo = 0;
  double s_hi = 0;
  double s_star = 0;
  /// Every evaluation of lambda(s), in order.
  std::vector<LambdaSample> lambda_trace;
};

/// Spectral radius of the length-transfer matrix T_s[k, l] = (q / d(k, l)^2)^s
/// on states 0..K.
LambdaSample transfer_radius(std::int64_t cutoff, double s, double rel_tol = 1e-12,
                             std::uint64_t max_iterations = 200000);

/// Root of lambda(s) = 1 on [0, 1] by bisection to `tolerance`. Throws
/// SolverError when lambda(0) <= 1 or lambda(1) >= 1.
PressureEstimate pressure_dimension(std::int64_t cutoff, double tolerance = 1e-6);

struct LebesgueLevel {
  std::uint64_t n = 0;
  /// Total length of the depth-n cylinders with all symbols <= K.
  double lower = 0;
  /// lower plus the total length of cylinders that left the truncation at
  /// some level j <= n; an upper bound for the full level mass.
  double upper = 0;
};

struct LebesgueDecay {
  std::uint64_t depth = 0;
  std::int64_t cutoff = 0;
  std::vector<LebesgueLevel> levels;
  /// Geometric mean of upper_n / upper_{n-1} over the computed levels.
  double mean_rate = 0;
};

/// Retained fraction f(k) of a parent with last symbol k: 1/2 for k = 0,
/// 1/2 + q (H2(k) + 1/(4 k^2)) otherwise.
double retained_fraction(std::int64_t k);

LebesgueDecay lebesgue_mass_decay(std::uint64_t depth, std::int64_t cutoff);

}  // namespace cantorlab
