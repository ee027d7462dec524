#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "cantorlab/coding.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/rational.hpp"
#include "cantorlab/zeta.hpp"

namespace cantorlab {

struct MeasureParams {
  Rational alpha{3, 4};
  long precision = kDefaultPrecision;

  /// Throws DomainError unless 1/2 < alpha <= 1 (or alpha > 1/2 when
  /// `allow_above_one`).
  void validate(bool allow_above_one = false) const;
  Rational exponent() const { return 2 * alpha; }
};

/// Per-step factor f_i of a cylinder mass.
struct StepFactor {
  enum class Kind { Pair, Diag, Zero };
  Kind kind = Kind::Pair;
  /// Pair: d = |next - prev|; Diag and Zero: m = prev.
  std::uint64_t a = 0;
  /// Pair: s = next + prev; unused otherwise.
  std::uint64_t b = 0;

  static StepFactor of(Symbol prev, Symbol next);
  /// f_i as an enclosure for the exponent 2 alpha.
  Interval evaluate(const Interval& exponent) const;
  /// log f_i in double precision, cancellation-free for huge arguments.
  double log_value(double exponent) const;
  friend bool operator==(const StepFactor&, const StepFactor&) = default;
};

/// mu_alpha(I_word) stored structurally: (2 zeta(2 alpha))^-n prod f_i.
class CylinderMass {
 public:
  CylinderMass(AdmissibleWord word, Rational alpha);

  const AdmissibleWord& word() const { return word_; }
  const Rational& alpha() const { return alpha_; }
  const std::vector<StepFactor>& factors() const { return factors_; }
  std::size_t depth() const { return factors_.size(); }

  Interval evaluate(long precision = kDefaultPrecision) const;
  /// log mu = -n log(2 zeta(2 alpha)) + sum log f_i.
  Interval log_evaluate(long precision = kDefaultPrecision) const;

 private:
  AdmissibleWord word_;
  Rational alpha_;
  std::vector<StepFactor> factors_;
};

CylinderMass cylinder_mass(const AdmissibleWord& word, const MeasureParams& params);

/// P(X_{n+1} = l | X_n = m) of the walk on N0; exactly 0 for m = l = 0.
Interval transition_prob(Symbol m, Symbol l, const MeasureParams& params);

/// Exact numerator of the kernel at alpha = 1, where every power is
/// rational: P(m, l) = q * kernel_weight_alpha_one(m, l).
Rational kernel_weight_alpha_one(Symbol m, Symbol l);

/// Cached table of n^-s for n = 1..size, grown on demand.
class InversePowerTable {
 public:
  InversePowerTable(Rational s, long precision);
  /// Shared table for (s, precision).
  static std::shared_ptr<InversePowerTable> shared(const Rational& s, long precision);

  const Interval& at(std::uint64_t n);
  const Interval& exponent() const { return s_; }
  long precision() const { return precision_; }

 private:
  Rational s_exact_;
  Interval s_;
  long precision_;
  std::mutex mu_;
  // deque keeps references stable while the table grows
  std::deque<Interval> values_;
};

struct ConsistencyReport {
  Interval parent_mass;
  /// Sum of child masses with symbol <= K.
  Interval partial;
  /// Rigorous bracket of the children beyond K.
  Interval tail_lo;
  Interval tail_hi;
  std::int64_t truncation = 0;

  Interval lower() const { return partial + tail_lo; }
  Interval upper() const { return partial + tail_hi; }
  /// parent_mass lies inside [lower, upper].
  bool holds() const;
};

/// Checks mu(I_word) = sum_c mu(I_word c) with children summed up to
/// symbol K and an integral bracket for the rest. Needs K >= last + 2.
ConsistencyReport consistency_defect(const AdmissibleWord& word, const MeasureParams& params,
                                     std::int64_t truncation);

/// The same bracket for a single kernel row: sum_l P(m, l) against 1.
ConsistencyReport kernel_row_sum(Symbol m, const MeasureParams& params, std::int64_t truncation);

}  // namespace cantorlab
