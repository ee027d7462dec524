#include "cantorlab/geometry.hpp"

#include <mutex>
#include <utility>

#include "cantorlab/error.hpp"

namespace cantorlab {

// ---------------------------------------------------------------------------
// QPolynomial

QPolynomial QPolynomial::monomial(const Rational& coeff, int degree) {
  QPolynomial p;
  p.add_term(degree, coeff);
  return p;
}

Rational QPolynomial::coefficient(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void QPolynomial::add_term(int degree, const Rational& coeff) {
  if (degree < 0) throw DomainError("negative degree in QPolynomial");
  if (coeff == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(degree, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) coeffs_.erase(it);
  }
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& rhs) {
  for (const auto& [deg, c] : rhs.coeffs_) add_term(deg, c);
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& rhs) {
  for (const auto& [deg, c] : rhs.coeffs_) add_term(deg, -c);
  return *this;
}

QPolynomial QPolynomial::scaled(const Rational& factor) const {
  QPolynomial out;
  if (factor == 0) return out;
  for (const auto& [deg, c] : coeffs_) out.coeffs_.emplace(deg, c * factor);
  return out;
}

QPolynomial QPolynomial::shifted(int k) const {
  QPolynomial out;
  for (const auto& [deg, c] : coeffs_) out.add_term(deg + k, c);
  return out;
}

Interval QPolynomial::evaluate(long precision) const {
  const long work = precision + 32;
  Interval sum(work);
  if (coeffs_.empty()) return sum;
  const Interval q = Interval::q(work);
  Interval qpow = Interval::from_long(1, work);
  int at = 0;
  for (const auto& [deg, c] : coeffs_) {
    for (; at < deg; ++at) qpow *= q;
    sum += Interval::from_rational(c, work) * qpow;
  }
  return sum;
}

int compare(const QPolynomial& a, const QPolynomial& b, long precision, long max_precision) {
  const QPolynomial diff = a - b;
  if (diff.is_zero()) return 0;
  for (long p = precision; p <= max_precision; p *= 2) {
    const Interval v = diff.evaluate(p);
    if (v.certainly_positive()) return 1;
    if (v.certainly_negative()) return -1;
  }
  throw PrecisionError("comparison undecided at " + std::to_string(max_precision) + " bits");
}

// ---------------------------------------------------------------------------
// Lengths and placement

std::uint64_t step_denominator(Symbol prev, Symbol next) {
  if (!is_legal_transition(prev, next)) {
    throw DomainError("illegal transition " + std::to_string(prev) + " -> " + std::to_string(next));
  }
  if (next == 0) return static_cast<std::uint64_t>(prev);
  if (next == prev) return 2 * static_cast<std::uint64_t>(prev);
  return static_cast<std::uint64_t>(next > prev ? next - prev : prev - next);
}

QPolynomial CylinderLength::as_polynomial() const {
  return QPolynomial::monomial(coeff, static_cast<int>(depth));
}

Interval CylinderLength::evaluate(long precision) const { return as_polynomial().evaluate(precision); }

CylinderLength cylinder_length(const AdmissibleWord& word) {
  CylinderLength len{Rational(1), 0};
  Symbol prev = 0;
  BigInt den = 1;
  for (Symbol s : word.symbols()) {
    const BigInt d = static_cast<unsigned long>(step_denominator(prev, s));
    den *= d * d;
    prev = s;
  }
  len.coeff = Rational(BigInt(1), den);
  len.coeff.canonicalize();
  len.depth = word.depth();
  return len;
}

namespace {

Rational inverse_square(std::uint64_t d) {
  BigInt den = static_cast<unsigned long>(d);
  return Rational(BigInt(1), den * den);
}

// Sum over right-block children c, c+1, ..., k of 1/d(k, i)^2, so that the
// block of those children spans |I| q S at the right end of the parent.
Rational right_block_span(Symbol k, Symbol c) {
  Rational s = inverse_square(2 * static_cast<std::uint64_t>(k));
  if (c <= k - 1) s += harmonic2(static_cast<unsigned long>(k - std::max<Symbol>(c, 1)));
  if (c == 0) s += inverse_square(static_cast<std::uint64_t>(k));
  return s;
}

}  // namespace

CylinderGeometry cylinder_interval(const AdmissibleWord& word) {
  QPolynomial left;
  Rational r(1);
  int n = 0;
  Symbol prev = 0;
  for (Symbol c : word.symbols()) {
    const std::uint64_t d = step_denominator(prev, c);
    if (prev == 0 || c > prev) {
      const auto j = static_cast<unsigned long>(c - prev);
      left += QPolynomial::monomial(r * harmonic2(j - 1), n + 1);
    } else {
      left += QPolynomial::monomial(r, n);
      left -= QPolynomial::monomial(r * right_block_span(prev, c), n + 1);
    }
    r *= inverse_square(d);
    ++n;
    prev = c;
  }
  return CylinderGeometry{word, std::move(left), CylinderLength{r, static_cast<std::size_t>(n)}};
}

HoleGeometry hole(const AdmissibleWord& word) {
  const CylinderGeometry parent = cylinder_interval(word);
  const Rational& r = parent.length.coeff;
  const int n = static_cast<int>(parent.length.depth);
  const Symbol k = word.last();
  HoleGeometry h{word, parent.left + QPolynomial::monomial(r / 2, n), QPolynomial::monomial(r / 2, n)};
  if (k != 0) {
    // The right block covers q (H2(k) + 1/(4k^2)) |I| next to the right end.
    const Rational covered = harmonic2(static_cast<unsigned long>(k)) +
                             inverse_square(2 * static_cast<std::uint64_t>(k));
    h.length -= QPolynomial::monomial(r * covered, n + 1);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Partition identity

Interval harmonic2_enclosure(std::uint64_t L, long precision) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, long>, Interval> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({L, precision});
    if (it != cache.end()) return it->second;
  }
  Interval sum(precision);
  // Smallest terms first.
  for (std::uint64_t l = L; l >= 1; --l) {
    sum += Interval::from_long(1, precision) /
           (Interval::from_ulong(l, precision) * Interval::from_ulong(l, precision));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(L, precision), sum);
  return sum;
}

bool PartitionBracket::holds() const {
  return Interval::hull(lower(), upper()).contains(half_length);
}

PartitionBracket left_block_bracket(const AdmissibleWord& word, std::uint64_t L, long precision) {
  if (L < 1) throw DomainError("left_block_bracket needs L >= 1");
  const Interval len = cylinder_length(word).evaluate(precision);
  const Interval q = Interval::q(precision);
  const Interval scale = len * q;
  // Every left-block child k+l has denominator l, independent of k.
  PartitionBracket b{scale * harmonic2_enclosure(L, precision),
                     scale / Interval::from_ulong(L + 1, precision),
                     scale / Interval::from_ulong(L, precision),
                     len / Interval::from_long(2, precision)};
  return b;
}

// ---------------------------------------------------------------------------
// The interval map

namespace {

enum class Where { Below, Inside, Above };

Where locate(const Interval& x, const Interval& lo, const Interval& hi) {
  if (!mpfr_less_p(x.lo(), lo.hi()) && mpfr_less_p(x.hi(), hi.lo())) return Where::Inside;
  if (mpfr_less_p(x.hi(), lo.lo())) return Where::Below;
  if (!mpfr_less_p(x.lo(), hi.hi())) return Where::Above;
  throw PrecisionError("point enclosure straddles a cylinder boundary");
}

constexpr std::uint64_t kMaxScan = 10'000'000;

}  // namespace

std::optional<Interval> phi_apply(const Interval& x, long precision) {
  if (mpfr_sgn(x.lo()) < 0) throw DomainError("phi_apply needs x >= 0");
  const Interval one = Interval::from_long(1, precision);
  const Interval half = one / Interval::from_long(2, precision);
  if (!mpfr_less_p(x.lo(), half.hi())) return std::nullopt;
  if (!mpfr_less_p(x.hi(), half.lo())) throw PrecisionError("point enclosure straddles 1/2");
  const Interval q = Interval::q(precision);

  // Level one: I_k = [q H2(k-1), q H2(k)).
  Interval h(precision);
  Symbol k = 0;
  Interval a(precision);
  for (std::uint64_t i = 1;; ++i) {
    if (i > kMaxScan) throw PrecisionError("point too close to 1/2 for the level-one scan");
    const Interval lo = q * h;
    const Interval kk = Interval::from_ulong(i, precision);
    h += one / (kk * kk);
    const Interval hi = q * h;
    if (locate(x, lo, hi) == Where::Inside) {
      k = static_cast<Symbol>(i);
      a = lo;
      break;
    }
  }
  const Interval kk = Interval::from_long(k, precision);
  const Interval len = q / (kk * kk);
  const Interval mid = a + len * half;

  Symbol l = -1;
  Interval child_lo(precision);
  Interval child_len(precision);
  if (mpfr_less_p(x.hi(), mid.lo())) {
    Interval hj(precision);
    for (std::uint64_t j = 1;; ++j) {
      if (j > kMaxScan) throw PrecisionError("point too close to the accumulation point");
      const Interval lo = a + len * q * hj;
      const Interval jj = Interval::from_ulong(j, precision);
      const Interval piece = len * q / (jj * jj);
      hj += one / (jj * jj);
      const Interval hi = lo + piece;
      if (locate(x, lo, hi) == Where::Inside) {
        l = k + static_cast<Symbol>(j);
        child_lo = lo;
        child_len = piece;
        break;
      }
    }
  } else if (!mpfr_less_p(x.lo(), mid.hi())) {
    // Right block, children 0..k laid out leftwards from the right endpoint.
    Interval right = a + len;
    for (Symbol c = k; c >= 0; --c) {
      const Interval dd = Interval::from_ulong(step_denominator(k, c), precision);
      const Interval piece = len * q / (dd * dd);
      const Interval lo = right - piece;
      const Where w = locate(x, lo, right);
      if (w == Where::Inside) {
        l = c;
        child_lo = lo;
        child_len = piece;
        break;
      }
      if (w == Where::Above) throw PrecisionError("point enclosure left the parent interval");
      right = lo;
    }
    if (l < 0) return std::nullopt;  // in the hole
  } else {
    // On (or straddling) the accumulation point of the left block.
    return std::nullopt;
  }

  // Convex hull of the image set: all of I_k unless only left-block
  // children with index >= l - 1 > k remain.
  Interval hull_lo = a;
  Interval hull_len = len;
  if (l >= k + 2) {
    const auto offset = static_cast<std::uint64_t>(l - 1 - k);
    Interval hs(precision);
    for (std::uint64_t j = 1; j < offset; ++j) {
      const Interval jj = Interval::from_ulong(j, precision);
      hs += one / (jj * jj);
    }
    hull_lo = a + len * q * hs;
    hull_len = mid - hull_lo;
  }
  return hull_lo + (x - child_lo) * (hull_len / child_len);
}

std::size_t phi_orbit_length(const Interval& x, std::size_t max_steps, long precision) {
  Interval cur = x;
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto next = phi_apply(cur, precision);
    if (!next) return i;
    cur = std::move(*next);
  }
  return max_steps;
}

}  // namespace cantorlab
