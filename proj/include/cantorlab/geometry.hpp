#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "cantorlab/coding.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/rational.hpp"

namespace cantorlab {

/// Exact polynomial sum_j c_j q^j with rational coefficients in the
/// construction constant q = 3/pi^2. Zero coefficients are never stored.
class QPolynomial {
 public:
  QPolynomial() = default;
  static QPolynomial monomial(const Rational& coeff, int degree);

  const std::map<int, Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Highest degree with a nonzero coefficient, -1 for the zero polynomial.
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  Rational coefficient(int degree) const;

  QPolynomial& operator+=(const QPolynomial& rhs);
  QPolynomial& operator-=(const QPolynomial& rhs);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  QPolynomial scaled(const Rational& factor) const;
  /// Multiplies by q^k.
  QPolynomial shifted(int k) const;

  /// Rigorous enclosure of the value at q.
  Interval evaluate(long precision) const;

  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

 private:
  void add_term(int degree, const Rational& coeff);
  std::map<int, Rational> coeffs_;
};

/// Sign of a - b. Starts at `precision` bits and doubles until the
/// enclosure of the difference excludes zero. Because q is transcendental a
/// nonzero difference is always decided eventually; PrecisionError is raised
/// only when `max_precision` is exhausted.
int compare(const QPolynomial& a, const QPolynomial& b, long precision = kDefaultPrecision,
            long max_precision = 1 << 16);

/// d such that |child| = q |parent| / d^2 for the transition prev -> next:
/// |next - prev| for next not in {0, prev}, 2 prev for next = prev, prev for
/// next = 0. Throws DomainError for an illegal transition.
std::uint64_t step_denominator(Symbol prev, Symbol next);

/// |I_word| = coeff * q^depth exactly.
struct CylinderLength {
  Rational coeff;
  std::size_t depth = 0;

  QPolynomial as_polynomial() const;
  Interval evaluate(long precision) const;
};

CylinderLength cylinder_length(const AdmissibleWord& word);

struct CylinderGeometry {
  AdmissibleWord word;
  QPolynomial left;
  CylinderLength length;

  QPolynomial right() const { return left + length.as_polynomial(); }
};

/// Exact placement of I_word: left-block children are laid out from the
/// parent's left endpoint, right-block children from its right endpoint
/// (child k_n flush right, then k_n - 1, ..., 0 moving left).
CylinderGeometry cylinder_interval(const AdmissibleWord& word);

struct HoleGeometry {
  AdmissibleWord word;
  QPolynomial left;
  QPolynomial length;

  QPolynomial right() const { return left + length; }
};

/// The part of I_word removed at the next level: the right half after a 0
/// (or at the root), otherwise the gap between the midpoint and child 0.
HoleGeometry hole(const AdmissibleWord& word);

/// Enclosure of sum_{l=1}^{L} 1/l^2, memoized per (L, precision).
Interval harmonic2_enclosure(std::uint64_t L, long precision);

/// Sum of the left-block child lengths with index offset l <= L, plus a
/// rigorous bracket for the l > L tail, compared against |I_word| / 2.
struct PartitionBracket {
  Interval partial;
  Interval tail_lo;
  Interval tail_hi;
  Interval half_length;

  Interval lower() const { return partial + tail_lo; }
  Interval upper() const { return partial + tail_hi; }
  /// lower() <= |I|/2 <= upper(), rigorously.
  bool holds() const;
};

PartitionBracket left_block_bracket(const AdmissibleWord& word, std::uint64_t L,
                                    long precision = kDefaultPrecision);

/// One application of the interval map. Locates the level-2 cylinder I_{kl}
/// containing x and maps it affinely, orientation preserved, onto the convex
/// hull of its image set. Returns std::nullopt when x lies in a hole (or on
/// the left-block accumulation point). Throws PrecisionError when the
/// enclosure of x straddles a cylinder boundary.
std::optional<Interval> phi_apply(const Interval& x, long precision = kDefaultPrecision);

/// Number of consecutive applications of phi_apply before escaping, capped
/// at max_steps.
std::size_t phi_orbit_length(const Interval& x, std::size_t max_steps,
                             long precision = kDefaultPrecision);

}  // namespace cantorlab
