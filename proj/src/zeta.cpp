#include "cantorlab/zeta.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

void check_exponent(const Rational& s) {
  if (s <= kMinZetaExponent) {
    throw DomainError("zeta exponent " + to_string(s) + " too close to 1 (need s > 101/100)");
  }
}

// B_{2k} / (2k)!, grown on demand.
class BernoulliTable {
 public:
  Rational scaled_even(unsigned k) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(2 * k);
    while (scaled_.size() <= k) {
      const unsigned j = static_cast<unsigned>(scaled_.size());
      Rational fact = 1;
      for (unsigned i = 2; i <= 2 * j; ++i) fact *= i;
      scaled_.push_back(b_[2 * j] / fact);
    }
    return scaled_[k];
  }

  Rational get(unsigned n) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(n);
    return b_[n];
  }

 private:
  // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j.
  void grow(unsigned n) {
    if (b_.empty()) b_.push_back(Rational(1));
    while (b_.size() <= n) {
      const unsigned m = static_cast<unsigned>(b_.size());
      Rational acc = 0;
      BigInt binom = 1;  // C(m+1, 0)
      for (unsigned j = 0; j < m; ++j) {
        if (b_[j] != 0) acc += Rational(binom) * b_[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      Rational bm = -acc / Rational(m + 1);
      bm.canonicalize();
      b_.push_back(bm);
    }
  }

  std::mutex mu_;
  std::vector<Rational> b_;
  std::vector<Rational> scaled_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

Interval euler_maclaurin_tail(const Interval& s, const BigInt& start, long precision) {
  const long work = precision + 32;
  BigInt n0 = std::max(start, BigInt(precision / 4 + 8));
  while (true) {
    Interval head(work);
    for (BigInt n = start; n < n0; ++n) {
      head += pow(Interval::from_bigint(n, work), -s);
    }
    const Interval one = Interval::from_long(1, work);
    const Interval big_n = Interval::from_bigint(n0, work);
    const Interval n_pow = pow(big_n, -s);          // N^-s
    const Interval s_minus_1 = s - one;
    Interval main = n_pow * big_n / s_minus_1;      // N^(1-s)/(s-1)
    main += n_pow / Interval::from_long(2, work);   // N^-s / 2

    mpfr_t target;
    mpfr_init2(target, 64);
    mpfr_set(target, main.lo(), MPFR_RNDD);
    if (mpfr_cmp_ui(target, 1) > 0) mpfr_set_ui(target, 1, MPFR_RNDD);
    mpfr_mul_2si(target, target, -(precision + 8), MPFR_RNDD);

    const Interval inv_n2 = one / (big_n * big_n);
    Interval poch = s;                   // (s)_{2k-1}
    Interval npow = n_pow / big_n;       // N^(-s-2k+1)
    double prev_mag = 0.0;
    bool converged = false;
    for (unsigned k = 1; k <= static_cast<unsigned>(precision) + 64; ++k) {
      const Interval coeff = Interval::from_rational(bernoulli_table().scaled_even(k), work);
      const Interval term = coeff * poch * npow;
      const Interval mag = abs(term);
      if (mpfr_less_p(mag.hi(), target)) {
        // The remainder after this term is bounded by its own magnitude.
        main += term;
        main = main.widened(mag);
        converged = true;
        break;
      }
      const double m = mag.hi_double();
      if (k > 1 && m >= prev_mag) break;  // asymptotic series turned; need larger N
      prev_mag = m;
      main += term;
      const Interval tk = Interval::from_ulong(2 * k, work);
      poch *= (s + tk - one) * (s + tk);
      npow *= inv_n2;
    }
    mpfr_clear(target);
    if (converged) return head + main;
    n0 *= 2;
  }
}

struct ZetaKey {
  std::string s;
  long precision;
  friend bool operator<(const ZetaKey& a, const ZetaKey& b) {
    return std::tie(a.s, a.precision) < std::tie(b.s, b.precision);
  }
};

}  // namespace

Rational bernoulli(unsigned n) { return bernoulli_table().get(n); }

Interval zeta(const Rational& s, long precision) {
  check_exponent(s);
  static std::shared_mutex mu;
  static std::map<ZetaKey, Interval> cache;
  const ZetaKey key{to_string(s), precision};
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const Interval sv = Interval::from_rational(s, precision + 32);
  Interval value = euler_maclaurin_tail(sv, BigInt(1), precision);
  std::unique_lock lock(mu);
  cache.emplace(key, value);  // idempotent: concurrent writers store equal values
  return value;
}

Interval zeta_tail(const Rational& s, const BigInt& N, long precision) {
  check_exponent(s);
  if (N < 1) throw DomainError("zeta_tail needs N >= 1");
  const Interval sv = Interval::from_rational(s, precision + 32);
  return euler_maclaurin_tail(sv, N, precision);
}

TailBracket integral_tail_bracket(const Interval& s, const BigInt& N, long precision) {
  if (N < 1) throw DomainError("integral_tail_bracket needs N >= 1");
  const Interval one = Interval::from_long(1, precision);
  const Interval e = one - s;
  const Interval s1 = s - one;
  return TailBracket{pow(Interval::from_bigint(N + 1, precision), e) / s1,
                     pow(Interval::from_bigint(N, precision), e) / s1};
}

}  // namespace cantorlab
