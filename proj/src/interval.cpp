#include "cantorlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

// Temporary MPFR scalar.
struct Scratch {
  mpfr_t v;
  explicit Scratch(long prec) { mpfr_init2(v, prec); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

void raise_precision(mpfr_ptr lo, mpfr_ptr hi, long prec) {
  if (mpfr_get_prec(lo) < prec) {
    mpfr_prec_round(lo, prec, MPFR_RNDD);
    mpfr_prec_round(hi, prec, MPFR_RNDU);
  }
}

}  // namespace

Interval::Interval(long precision) {
  if (precision < MPFR_PREC_MIN || precision > 1 << 24) {
    throw DomainError("precision out of range: " + std::to_string(precision));
  }
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_long(long value, long precision) {
  Interval r(precision);
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_ulong(unsigned long value, long precision) {
  Interval r(precision);
  mpfr_set_ui(r.lo_, value, MPFR_RNDD);
  mpfr_set_ui(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_bigint(const BigInt& value, long precision) {
  Interval r(precision);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const Rational& value, long precision) {
  Interval r(precision);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(double lo, double hi, long precision) {
  if (!(lo <= hi)) throw DomainError("interval bounds out of order");
  Interval r(precision);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::pi(long precision) {
  Interval r(precision);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::q(long precision) {
  // Evaluate with guard bits, then the 3/pi^2 enclosure is rounded outward.
  const Interval p = pi(precision + 16);
  Interval r = from_long(3, precision + 16) / (p * p);
  Interval out(precision);
  mpfr_set(out.lo_, r.lo_, MPFR_RNDD);
  mpfr_set(out.hi_, r.hi_, MPFR_RNDU);
  return out;
}

double Interval::mid_double() const {
  Scratch m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double Interval::width_double() const {
  Scratch w(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_); }

Interval& Interval::operator+=(const Interval& rhs) {
  raise_precision(lo_, hi_, rhs.precision());
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  if (this == &rhs) {
    const Interval copy(rhs);
    return *this -= copy;
  }
  raise_precision(lo_, hi_, rhs.precision());
  mpfr_sub(lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, rhs.lo_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  const long prec = std::max(precision(), rhs.precision());
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(rhs.lo_) >= 0) {
    raise_precision(lo_, hi_, prec);
    mpfr_mul(lo_, lo_, rhs.lo_, MPFR_RNDD);
    mpfr_mul(hi_, hi_, rhs.hi_, MPFR_RNDU);
    return *this;
  }
  Scratch c[4] = {Scratch(prec), Scratch(prec), Scratch(prec), Scratch(prec)};
  Scratch d[4] = {Scratch(prec), Scratch(prec), Scratch(prec), Scratch(prec)};
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  for (int i = 0; i < 4; ++i) {
    mpfr_mul(c[i].v, a[i / 2], b[i % 2], MPFR_RNDD);
    mpfr_mul(d[i].v, a[i / 2], b[i % 2], MPFR_RNDU);
  }
  raise_precision(lo_, hi_, prec);
  mpfr_min(lo_, c[0].v, c[1].v, MPFR_RNDD);
  mpfr_min(lo_, lo_, c[2].v, MPFR_RNDD);
  mpfr_min(lo_, lo_, c[3].v, MPFR_RNDD);
  mpfr_max(hi_, d[0].v, d[1].v, MPFR_RNDU);
  mpfr_max(hi_, hi_, d[2].v, MPFR_RNDU);
  mpfr_max(hi_, hi_, d[3].v, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) throw DomainError("interval division by an enclosure of zero");
  const long prec = std::max(precision(), rhs.precision());
  if (mpfr_sgn(lo_) >= 0 && rhs.certainly_positive()) {
    raise_precision(lo_, hi_, prec);
    mpfr_div(lo_, lo_, rhs.hi_, MPFR_RNDD);
    mpfr_div(hi_, hi_, rhs.lo_, MPFR_RNDU);
    return *this;
  }
  Scratch c[4] = {Scratch(prec), Scratch(prec), Scratch(prec), Scratch(prec)};
  Scratch d[4] = {Scratch(prec), Scratch(prec), Scratch(prec), Scratch(prec)};
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  for (int i = 0; i < 4; ++i) {
    mpfr_div(c[i].v, a[i / 2], b[i % 2], MPFR_RNDD);
    mpfr_div(d[i].v, a[i / 2], b[i % 2], MPFR_RNDU);
  }
  raise_precision(lo_, hi_, prec);
  mpfr_min(lo_, c[0].v, c[1].v, MPFR_RNDD);
  mpfr_min(lo_, lo_, c[2].v, MPFR_RNDD);
  mpfr_min(lo_, lo_, c[3].v, MPFR_RNDD);
  mpfr_max(hi_, d[0].v, d[1].v, MPFR_RNDU);
  mpfr_max(hi_, hi_, d[2].v, MPFR_RNDU);
  mpfr_max(hi_, hi_, d[3].v, MPFR_RNDU);
  return *this;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::widened(const Interval& radius) const {
  Interval r(*this);
  mpfr_sub(r.lo_, r.lo_, radius.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, radius.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::decimal(int digits) const {
  Scratch m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), m.v);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Interval::decimal() const {
  const int digits = std::max(17, static_cast<int>(precision() * 0.30103) - 4);
  return decimal(digits);
}

Interval log(const Interval& x) {
  if (!x.certainly_positive()) throw DomainError("log of a non-positive enclosure");
  Interval r(x.precision());
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.precision());
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval r(x.precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& base, const Interval& exponent) {
  if (!base.certainly_positive()) throw DomainError("pow needs a positive base");
  // x^s is monotone in each argument on x > 0, so the extremes sit at corners.
  const long prec = std::max(base.precision(), exponent.precision());
  mpfr_srcptr b[2] = {base.lo_, base.hi_};
  mpfr_srcptr e[2] = {exponent.lo_, exponent.hi_};
  Interval r(prec);
  Scratch t(prec);
  for (int i = 0; i < 4; ++i) {
    mpfr_pow(t.v, b[i / 2], e[i % 2], MPFR_RNDD);
    if (i == 0 || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
    mpfr_pow(t.v, b[i / 2], e[i % 2], MPFR_RNDU);
    if (i == 0 || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
  }
  return r;
}

Interval inverse_power(unsigned long n, const Interval& s) {
  if (n == 0) throw DomainError("inverse_power needs n >= 1");
  const long prec = s.precision();
  Interval r(prec);
  if (n == 1) {
    mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
    mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  // n^(-s) is decreasing in s for n >= 2.
  Scratch base(64);
  mpfr_set_ui(base.v, n, MPFR_RNDN);  // exact: n fits in 64 bits
  Scratch neg(prec);
  mpfr_neg(neg.v, s.hi(), MPFR_RNDN);  // negation is exact
  mpfr_pow(r.lo_, base.v, neg.v, MPFR_RNDD);
  mpfr_neg(neg.v, s.lo(), MPFR_RNDN);
  mpfr_pow(r.hi_, base.v, neg.v, MPFR_RNDU);
  return r;
}

}  // namespace cantorlab
