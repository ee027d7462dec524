#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cantorlab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or an integer "p". Decimal notation is rejected so that
/// exponents such as alpha stay exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// floor(n^gamma) for n >= 1 and gamma >= 0, exact.
BigInt floor_power(unsigned long n, const Rational& gamma);

/// ceil(n^gamma) for n >= 1 and gamma >= 0, exact.
BigInt ceil_power(unsigned long n, const Rational& gamma);

/// Exact H2(m) = sum_{l=1}^{m} 1/l^2 (0 for m = 0), by binary splitting.
Rational harmonic2(unsigned long m);

}  // namespace cantorlab
