#include "cantorlab/measure.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "cantorlab/error.hpp"

namespace cantorlab {

void MeasureParams::validate(bool allow_above_one) const {
  const Rational half(1, 2);
  if (alpha <= half || (!allow_above_one && alpha > 1)) {
    throw DomainError("alpha must satisfy 1/2 < alpha <= 1, got " + to_string(alpha));
  }
  if (precision < 16) throw DomainError("precision must be at least 16 bits");
}

StepFactor StepFactor::of(Symbol prev, Symbol next) {
  if (!is_legal_transition(prev, next)) {
    throw DomainError("illegal transition " + std::to_string(prev) + " -> " + std::to_string(next));
  }
  const auto p = static_cast<std::uint64_t>(prev);
  const auto n = static_cast<std::uint64_t>(next);
  if (next == 0) return StepFactor{Kind::Zero, p, 0};
  if (next == prev) return StepFactor{Kind::Diag, p, 0};
  return StepFactor{Kind::Pair, n > p ? n - p : p - n, n + p};
}

Interval StepFactor::evaluate(const Interval& exponent) const {
  switch (kind) {
    case Kind::Pair:
      return inverse_power(a, exponent) + inverse_power(b, exponent);
    case Kind::Diag:
      return inverse_power(2 * a, exponent);
    case Kind::Zero:
      break;
  }
  return inverse_power(a, exponent);
}

double StepFactor::log_value(double exponent) const {
  const double la = std::log(static_cast<double>(a));
  switch (kind) {
    case Kind::Pair:
      return -exponent * la +
             std::log1p(std::pow(static_cast<double>(a) / static_cast<double>(b), exponent));
    case Kind::Diag:
      return -exponent * (la + std::log(2.0));
    case Kind::Zero:
      break;
  }
  return -exponent * la;
}

CylinderMass::CylinderMass(AdmissibleWord word, Rational alpha)
    : word_(std::move(word)), alpha_(std::move(alpha)) {
  Symbol prev = 0;
  factors_.reserve(word_.depth());
  for (Symbol s : word_.symbols()) {
    factors_.push_back(StepFactor::of(prev, s));
    prev = s;
  }
}

Interval CylinderMass::evaluate(long precision) const {
  const long work = precision + 32;
  Interval mass = Interval::from_long(1, work);
  if (factors_.empty()) return mass;
  const Interval s = Interval::from_rational(2 * alpha_, work);
  const Interval norm = Interval::from_long(2, work) * zeta(2 * alpha_, work);
  for (const StepFactor& f : factors_) mass *= f.evaluate(s) / norm;
  return mass;
}

Interval CylinderMass::log_evaluate(long precision) const {
  const long work = precision + 32;
  Interval sum(work);
  if (factors_.empty()) return sum;
  const Interval s = Interval::from_rational(2 * alpha_, work);
  const Interval log_norm = log(Interval::from_long(2, work) * zeta(2 * alpha_, work));
  for (const StepFactor& f : factors_) sum += log(f.evaluate(s));
  return sum - Interval::from_ulong(factors_.size(), work) * log_norm;
}

CylinderMass cylinder_mass(const AdmissibleWord& word, const MeasureParams& params) {
  params.validate(true);
  return CylinderMass(word, params.alpha);
}

Interval transition_prob(Symbol m, Symbol l, const MeasureParams& params) {
  params.validate(true);
  const long work = params.precision + 32;
  if (m < 0 || l < 0) throw DomainError("states must be non-negative");
  if (m == 0 && l == 0) return Interval(work);
  const Interval s = Interval::from_rational(params.exponent(), work);
  const Interval norm = Interval::from_long(2, work) * zeta(params.exponent(), work);
  return StepFactor::of(m, l).evaluate(s) / norm;
}

Rational kernel_weight_alpha_one(Symbol m, Symbol l) {
  if (m < 0 || l < 0) throw DomainError("states must be non-negative");
  if (m == 0 && l == 0) return Rational(0);
  const StepFactor f = StepFactor::of(m, l);
  auto inv_sq = [](std::uint64_t d) {
    BigInt den = static_cast<unsigned long>(d);
    return Rational(BigInt(1), den * den);
  };
  switch (f.kind) {
    case StepFactor::Kind::Pair:
      return inv_sq(f.a) + inv_sq(f.b);
    case StepFactor::Kind::Diag:
      return inv_sq(2 * f.a);
    case StepFactor::Kind::Zero:
      break;
  }
  return inv_sq(f.a);
}

// ---------------------------------------------------------------------------

InversePowerTable::InversePowerTable(Rational s, long precision)
    : s_exact_(std::move(s)), s_(Interval::from_rational(s_exact_, precision)), precision_(precision) {}

std::shared_ptr<InversePowerTable> InversePowerTable::shared(const Rational& s, long precision) {
  static std::mutex mu;
  static std::map<std::pair<std::string, long>, std::shared_ptr<InversePowerTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = tables[{to_string(s), precision}];
  if (!slot) slot = std::make_shared<InversePowerTable>(s, precision);
  return slot;
}

const Interval& InversePowerTable::at(std::uint64_t n) {
  if (n == 0) throw DomainError("inverse power of 0");
  std::lock_guard<std::mutex> lock(mu_);
  while (values_.size() < n) values_.push_back(inverse_power(values_.size() + 1, s_));
  return values_[n - 1];
}

bool ConsistencyReport::holds() const {
  return Interval::hull(lower(), upper()).contains(parent_mass);
}

namespace {

ConsistencyReport children_bracket(Symbol k, Interval parent, const MeasureParams& params,
                                   std::int64_t truncation) {
  params.validate(true);
  if (truncation < k + 2) {
    throw DomainError("truncation K must be at least last symbol + 2");
  }
  const long work = params.precision + 32;
  auto table = InversePowerTable::shared(params.exponent(), work);
  const Interval& s = table->exponent();

  Interval num(work);
  for (Symbol c : child_symbols(k, truncation)) {
    const StepFactor f = StepFactor::of(k, c);
    switch (f.kind) {
      case StepFactor::Kind::Pair:
        num += table->at(f.a);
        num += table->at(f.b);
        break;
      case StepFactor::Kind::Diag:
        num += table->at(2 * f.a);
        break;
      case StepFactor::Kind::Zero:
        num += table->at(f.a);
        break;
    }
  }
  const Interval scale = parent / (Interval::from_long(2, work) * zeta(params.exponent(), work));
  // Children c > K contribute (c - k)^-s + (c + k)^-s.
  const auto near = integral_tail_bracket(s, BigInt(static_cast<long>(truncation - k)), work);
  const auto far = integral_tail_bracket(s, BigInt(static_cast<long>(truncation + k)), work);
  ConsistencyReport r{std::move(parent), scale * num, scale * (near.lo + far.lo),
                      scale * (near.hi + far.hi), truncation};
  return r;
}

}  // namespace

ConsistencyReport consistency_defect(const AdmissibleWord& word, const MeasureParams& params,
                                     std::int64_t truncation) {
  const Interval parent = cylinder_mass(word, params).evaluate(params.precision);
  return children_bracket(word.last(), parent, params, truncation);
}

ConsistencyReport kernel_row_sum(Symbol m, const MeasureParams& params, std::int64_t truncation) {
  if (m < 0) throw DomainError("states must be non-negative");
  return children_bracket(m, Interval::from_long(1, params.precision + 32), params, truncation);
}

}  // namespace cantorlab
