#include "cantorlab/rational.hpp"

#include <cctype>
#include <utility>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// Sum of 1/i^2 over [a, b] as an unreduced fraction (num, den).
std::pair<BigInt, BigInt> split_sum(unsigned long a, unsigned long b) {
  if (a == b) {
    BigInt den = a;
    den *= a;
    return {BigInt(1), den};
  }
  const unsigned long mid = a + (b - a) / 2;
  auto [p1, q1] = split_sum(a, mid);
  auto [p2, q2] = split_sum(mid + 1, b);
  return {p1 * q2 + p2 * q1, q1 * q2};
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw DomainError("expected a rational \"p/q\", got \"" + std::string(text) + "\"");
  }
  if (num[0] == '+') num.erase(0, 1);
  Rational r{BigInt(num), BigInt(den)};
  if (r.get_den() == 0) throw DomainError("zero denominator in \"" + std::string(text) + "\"");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

BigInt floor_power(unsigned long n, const Rational& gamma) {
  if (n == 0) throw DomainError("floor_power needs n >= 1");
  if (gamma < 0) throw DomainError("floor_power needs gamma >= 0");
  const BigInt& a = gamma.get_num();
  const BigInt& b = gamma.get_den();
  if (!a.fits_ulong_p() || !b.fits_ulong_p()) throw DomainError("exponent too large");
  BigInt pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), n, a.get_ui());
  BigInt root;
  mpz_root(root.get_mpz_t(), pw.get_mpz_t(), b.get_ui());
  return root;
}

BigInt ceil_power(unsigned long n, const Rational& gamma) {
  BigInt f = floor_power(n, gamma);
  BigInt back;
  mpz_pow_ui(back.get_mpz_t(), f.get_mpz_t(), gamma.get_den().get_ui());
  BigInt pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), n, gamma.get_num().get_ui());
  if (back != pw) f += 1;
  return f;
}

Rational harmonic2(unsigned long m) {
  if (m == 0) return Rational(0);
  auto [p, q] = split_sum(1, m);
  Rational r{p, q};
  r.canonicalize();
  return r;
}

}  // namespace cantorlab
