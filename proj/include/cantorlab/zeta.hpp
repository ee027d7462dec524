#pragma once

#include "cantorlab/interval.hpp"
#include "cantorlab/rational.hpp"

namespace cantorlab {

/// Exponents at or below this value are rejected by the zeta routines.
inline const Rational kMinZetaExponent{101, 100};

/// Exact Bernoulli number B_n (B_1 = -1/2). Thread-safe, cached.
Rational bernoulli(unsigned n);

/// Enclosure of zeta(s) = sum_{n>=1} n^-s of width < 2^-precision, via
/// Euler-Maclaurin summation with a rigorous remainder bound. Memoized per
/// (s, precision); the cache is safe for concurrent use.
Interval zeta(const Rational& s, long precision = kDefaultPrecision);

/// Enclosure of sum_{n>=N} n^-s for N >= 1 (no memoization).
Interval zeta_tail(const Rational& s, const BigInt& N, long precision = kDefaultPrecision);

/// Rigorous integral bracket of sum_{n>N} n^-s:
/// [(N+1)^(1-s)/(s-1), N^(1-s)/(s-1)] for N >= 1.
struct TailBracket {
  Interval lo;
  Interval hi;
};
TailBracket integral_tail_bracket(const Interval& s, const BigInt& N, long precision);

}  // namespace cantorlab
