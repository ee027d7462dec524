#include <cmath>
#include <random>

#include "doctest.h"

#include "cantorlab/coding.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/geometry.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/io.hpp"
#include "cantorlab/rational.hpp"
#include "cantorlab/verify.hpp"
#include "cantorlab/zeta.hpp"

using namespace cantorlab;

namespace {

bool encloses(const Interval& x, double value, double slack = 0) {
  return x.lo_double() - slack <= value && value <= x.hi_double() + slack;
}

double q_value() { return 3.0 / (M_PI * M_PI); }

}  // namespace

TEST_CASE("rational parsing is exact and refuses decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK_THROWS_AS(parse_rational("0.75"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK(to_string(Rational(9, 10)) == "9/10");
}

TEST_CASE("integer powers with rational exponents") {
  CHECK(floor_power(10, Rational(3, 2)) == 31);
  CHECK(ceil_power(10, Rational(3, 2)) == 32);
  CHECK(floor_power(4, Rational(3, 2)) == 8);
  CHECK(ceil_power(4, Rational(3, 2)) == 8);
  CHECK(floor_power(7, Rational(0)) == 1);
  CHECK(harmonic2(0) == 0);
  CHECK(harmonic2(3) == Rational(49, 36));
}

TEST_CASE("interval constants") {
  const Interval q = Interval::q(256);
  CHECK(encloses(q, 0.30396355092701331433, 1e-17));
  CHECK(q.width_double() < 1e-70);
  const Interval pi = Interval::pi(64);
  CHECK(encloses(pi, M_PI, 1e-15));
  const Interval third = Interval::from_rational(Rational(1, 3), 128);
  CHECK(third.contains(Interval::from_rational(Rational(1, 3), 256)));
  CHECK(third.overlaps(Interval::from_rational(Rational(1, 3), 256)));
  CHECK((third - third).contains_zero());
}

TEST_CASE("zeta values and tails") {
  const Interval z15 = zeta(Rational(3, 2), 256);
  CHECK(encloses(z15, 2.6123753486854883433, 1e-15));
  CHECK(z15.width_double() < 1e-60);
  CHECK(encloses(zeta(Rational(2), 128), M_PI * M_PI / 6, 1e-15));
  CHECK(encloses(zeta(Rational(4), 128), 1.0823232337111381915, 1e-15));
  CHECK_THROWS_AS(zeta(Rational(1), 128), DomainError);
  // P(|J| >= 1000) for beta = 3/2.
  const Interval tail = zeta_tail(Rational(3, 2), BigInt(1000), 256) / z15;
  CHECK(encloses(tail, 0.024216033341589747199, 1e-15));
  const TailBracket b = integral_tail_bracket(Interval::from_rational(Rational(3, 2), 128), BigInt(999), 128);
  CHECK(b.lo.lo_double() <= zeta_tail(Rational(3, 2), BigInt(1000), 128).hi_double());
  CHECK(b.hi.hi_double() >= zeta_tail(Rational(3, 2), BigInt(1000), 128).lo_double());
}

TEST_CASE("admissibility") {
  const std::vector<Symbol> good{1, 0, 3, 3, 0, 1};
  CHECK(is_admissible(good));
  CHECK(is_admissible(std::vector<Symbol>{}));
  CHECK_FALSE(is_admissible(std::vector<Symbol>{0, 1}));
  CHECK_FALSE(is_admissible(std::vector<Symbol>{2, 0, 0}));
  CHECK_FALSE(is_admissible(std::vector<Symbol>{1, -1}));
  CHECK_THROWS_AS(AdmissibleWord({1, 0, 0}), DomainError);
  CHECK_THROWS_AS(AdmissibleWord::parse("0"), DomainError);
  const AdmissibleWord w = AdmissibleWord::parse("2,1,0,3");
  CHECK(w.to_string() == "2,1,0,3");
  CHECK(AdmissibleWord::parse(w.to_string()) == w);
  CHECK(w.prefix(2) == AdmissibleWord({2, 1}));
  CHECK_THROWS_AS(w.prefix(2).extended(1).extended(0).extended(0), DomainError);
}

TEST_CASE("children are listed left to right") {
  CHECK(child_symbols(2, 5) == std::vector<Symbol>{3, 4, 5, 0, 1, 2});
  CHECK(child_symbols(0, 3) == std::vector<Symbol>{1, 2, 3});
  CHECK(children(AdmissibleWord(), 2).size() == 2);
}

TEST_CASE("step denominators") {
  CHECK(step_denominator(3, 5) == 2);
  CHECK(step_denominator(5, 3) == 2);
  CHECK(step_denominator(3, 3) == 6);
  CHECK(step_denominator(3, 0) == 3);
  CHECK(step_denominator(0, 4) == 4);
  CHECK_THROWS_AS(step_denominator(0, 0), DomainError);
}

TEST_CASE("exact cylinder lengths") {
  const CylinderLength len = cylinder_length(AdmissibleWord({2, 1, 0, 3}));
  CHECK(len.coeff == Rational(1, 36));
  CHECK(len.depth == 4);
  CHECK(encloses(len.evaluate(128), 0.00023712838122036074925, 1e-18));
  const CylinderGeometry g = cylinder_interval(AdmissibleWord({1}));
  CHECK(g.left.is_zero());
  CHECK(g.length.coeff == 1);
  CHECK(g.length.depth == 1);
}

TEST_CASE("hole of the first cylinder") {
  const HoleGeometry h = hole(AdmissibleWord({1}));
  // q/2 - (5/4) q^2
  CHECK(h.length.coefficient(1) == Rational(1, 2));
  CHECK(h.length.coefficient(2) == Rational(-5, 4));
  CHECK(encloses(h.length.evaluate(128), 0.036489475098307886288, 1e-17));
  const HoleGeometry root = hole(AdmissibleWord());
  CHECK(root.length.coefficient(0) == Rational(1, 2));
}

TEST_CASE("property: children nest, stay disjoint, respect the hole") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const AdmissibleWord w = trial == 0 ? AdmissibleWord() : random_admissible_word(rng, 4, 6);
    const CylinderGeometry parent = cylinder_interval(w);
    const HoleGeometry h = hole(w);
    const auto kids = children(w, 8);
    REQUIRE_FALSE(kids.empty());
    CHECK(compare(parent.left, cylinder_interval(kids.front()).left) <= 0);
    CHECK(compare(cylinder_interval(kids.back()).right(), parent.right()) <= 0);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const CylinderGeometry c = cylinder_interval(kids[i]);
      CHECK(is_admissible(kids[i].symbols()));
      CHECK(kids[i].prefix(w.depth()) == w);
      CHECK(c.length.depth == w.depth() + 1);
      CHECK(c.length.coeff <= 1);
      CHECK(c.length.coeff * step_denominator(w.last(), kids[i].last()) *
                step_denominator(w.last(), kids[i].last()) ==
            parent.length.coeff);
      // Every child avoids the hole.
      const bool left_of = compare(c.right(), h.left) <= 0;
      const bool right_of = compare(h.right(), c.left) <= 0;
      CHECK((left_of || right_of));
      if (i + 1 < kids.size()) CHECK(compare(c.right(), cylinder_interval(kids[i + 1]).left) <= 0);
    }
  }
}

TEST_CASE("property: the left block fills half of the parent") {
  for (const char* text : {"1", "3", "1,2", "2,0,1", "4,4"}) {
    CAPTURE(text);
    CHECK(left_block_bracket(AdmissibleWord::parse(text), 200, 192).holds());
  }
}

TEST_CASE("exact comparison") {
  const QPolynomial a = QPolynomial::monomial(Rational(1), 1);                // q
  const QPolynomial b = QPolynomial::monomial(Rational(3, 10), 0);            // 0.3
  CHECK(compare(a, b) > 0);
  CHECK(compare(b, a) < 0);
  CHECK(compare(a, a) == 0);
  CHECK(compare(a.shifted(1), QPolynomial::monomial(Rational(1), 2)) == 0);
}

TEST_CASE("the interval map") {
  const long p = 192;
  // Midpoint of I_(1,0) maps into I_1 = [0, q).
  const CylinderGeometry c = cylinder_interval(AdmissibleWord({1, 0}));
  const Interval mid = c.left.evaluate(p) + c.length.evaluate(p) * Interval::from_rational(Rational(1, 2), p);
  const auto image = phi_apply(mid, p);
  REQUIRE(image.has_value());
  CHECK(image->lo_double() >= 0);
  CHECK(image->hi_double() < q_value());
  // Inside the hole of I_1 there is nothing to map.
  const HoleGeometry h = hole(AdmissibleWord({1}));
  const Interval in_hole = h.left.evaluate(p) + h.length.evaluate(p) * Interval::from_rational(Rational(1, 2), p);
  CHECK_FALSE(phi_apply(in_hole, p).has_value());
  CHECK_FALSE(phi_apply(Interval::from_rational(Rational(3, 5), p), p).has_value());
  CHECK(phi_orbit_length(Interval::from_rational(Rational(3, 5), p), 10, p) == 0);
}

TEST_CASE("json forms") {
  CHECK(rational_json(Rational(-1, 36)) == nlohmann::json{{"num", "-1"}, {"den", "36"}});
  const auto g = geometry_json(cylinder_interval(AdmissibleWord({2, 1})), 64);
  CHECK(g["word"] == nlohmann::json::array({2, 1}));
  CHECK(g["length"]["depth"] == 2);
  CHECK(g["length"]["den"] == "4");
}
