#include <cmath>

#include "doctest.h"

#include "cantorlab/error.hpp"
#include "cantorlab/measure.hpp"
#include "cantorlab/verify.hpp"

using namespace cantorlab;

namespace {

const MeasureParams kThreeQuarters{Rational(3, 4), 256};

bool encloses(const Interval& x, double value, double rel) {
  const double slack = rel * std::fabs(value);
  return x.lo_double() - slack <= value && value <= x.hi_double() + slack;
}

MeasureParams params(const char* alpha, long precision) { return MeasureParams{parse_rational(alpha), precision}; }

}  // namespace

TEST_CASE("parameter range") {
  CHECK_NOTHROW(params("3/4", 64).validate());
  CHECK_NOTHROW(params("1", 64).validate());
  CHECK_THROWS_AS(params("1/2", 64).validate(), DomainError);
  CHECK_THROWS_AS(params("3/2", 64).validate(), DomainError);
  CHECK_NOTHROW(params("3/2", 64).validate(true));
  CHECK_THROWS_AS(params("1/2", 64).validate(true), DomainError);
  CHECK_THROWS_AS(params("3/4", 8).validate(), DomainError);
}

TEST_CASE("kernel values") {
  CHECK(encloses(transition_prob(0, 1, kThreeQuarters), 0.38279338399942656225, 1e-15));
  CHECK(encloses(transition_prob(1, 2, kThreeQuarters), 0.22823100254905939940, 1e-15));
  CHECK(encloses(transition_prob(5, 0, kThreeQuarters), 0.017119040559197962228, 1e-15));
  CHECK(encloses(transition_prob(3, 3, kThreeQuarters), 0.013022895384886912397, 1e-15));
  const Interval zero = transition_prob(0, 0, kThreeQuarters);
  CHECK(zero.lo_double() == 0);
  CHECK(zero.hi_double() == 0);
}

TEST_CASE("kernel at alpha = 1 is q times a rational") {
  CHECK(kernel_weight_alpha_one(2, 2) == Rational(1, 16));
  CHECK(kernel_weight_alpha_one(0, 3) == Rational(2, 9));
  CHECK(kernel_weight_alpha_one(4, 0) == Rational(1, 16));
  CHECK(kernel_weight_alpha_one(1, 3) == Rational(1, 4) + Rational(1, 16));
  const MeasureParams one{Rational(1), 256};
  for (Symbol m : {0, 1, 4}) {
    for (Symbol l : {1, 2, 7}) {
      const Interval exact = Interval::q(256) * Interval::from_rational(kernel_weight_alpha_one(m, l), 256);
      CHECK(transition_prob(m, l, one).overlaps(exact));
    }
  }
}

TEST_CASE("property: kernel rows sum to one") {
  for (const char* alpha : {"3/4", "1", "51/100"}) {
    const MeasureParams p{parse_rational(alpha), 192};
    for (Symbol m : {0, 1, 7, 40}) {
      CAPTURE(alpha);
      CAPTURE(m);
      CHECK(kernel_row_sum(m, p, 2000).holds());
    }
  }
}

TEST_CASE("cylinder masses") {
  CHECK(encloses(cylinder_mass(AdmissibleWord({1, 1}), kThreeQuarters).evaluate(256), 0.025903226134362827227, 1e-15));
  CHECK(encloses(cylinder_mass(AdmissibleWord({2, 1, 0, 3}), kThreeQuarters).evaluate(256),
                 0.00043552294066036634704, 1e-15));
  CHECK(encloses(cylinder_mass(AdmissibleWord({2, 1, 0, 3}), params("1", 256)).evaluate(256), 0.0010539039165349366633,
                 1e-15));
  CHECK(cylinder_mass(AdmissibleWord(), kThreeQuarters).evaluate(64).lo_double() == 1.0);
}

TEST_CASE("structural factors") {
  const CylinderMass m(AdmissibleWord({2, 1, 0, 3}), Rational(3, 4));
  REQUIRE(m.factors().size() == 4);
  CHECK(m.factors()[0] == StepFactor{StepFactor::Kind::Pair, 2, 2});
  CHECK(m.factors()[1] == StepFactor{StepFactor::Kind::Pair, 1, 3});
  CHECK(m.factors()[2] == StepFactor{StepFactor::Kind::Zero, 1, 0});
  CHECK(m.factors()[3] == StepFactor{StepFactor::Kind::Pair, 3, 3});
  CHECK(StepFactor::of(4, 4) == StepFactor{StepFactor::Kind::Diag, 4, 0});
}

TEST_CASE("log factors agree with the enclosures") {
  const Interval e = Interval::from_rational(Rational(3, 2), 128);
  for (const StepFactor f : {StepFactor::of(3, 8), StepFactor::of(5, 5), StepFactor::of(7, 0),
                             StepFactor::of(1000000000000, 1000000000002)}) {
    const Interval v = f.evaluate(e);
    CHECK(f.log_value(1.5) == doctest::Approx(std::log(v.mid_double())).epsilon(1e-13));
  }
}

TEST_CASE("property: masses shrink and precision refinements nest") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const AdmissibleWord w = random_admissible_word(rng, 5, 9);
    const Interval coarse = cylinder_mass(w, kThreeQuarters).evaluate(64);
    const Interval fine = cylinder_mass(w, kThreeQuarters).evaluate(512);
    CHECK(coarse.overlaps(fine));
    CHECK(fine.width_double() <= coarse.width_double());
    const Interval log_mass = cylinder_mass(w, kThreeQuarters).log_evaluate(128);
    CHECK(log_mass.mid_double() == doctest::Approx(std::log(fine.mid_double())).epsilon(1e-12));
    for (Symbol c : child_symbols(w.last(), 6)) {
      const Interval child = cylinder_mass(w.extended(c), kThreeQuarters).evaluate(128);
      CHECK(child.certainly_less(fine));
    }
  }
}

TEST_CASE("property: consistency brackets hold") {
  for (const char* text : {"", "5", "1,0", "3,3", "2,7,1"}) {
    CAPTURE(text);
    const AdmissibleWord w = AdmissibleWord::parse(text);
    CHECK(consistency_defect(w, kThreeQuarters, 1000).holds());
    CHECK(consistency_defect(w, MeasureParams{Rational(9, 10), 192}, 500).holds());
  }
  CHECK_THROWS_AS(consistency_defect(AdmissibleWord({9}), kThreeQuarters, 10), DomainError);
}

TEST_CASE("inverse power table") {
  auto t = InversePowerTable::shared(Rational(3, 2), 128);
  CHECK(t == InversePowerTable::shared(Rational(3, 2), 128));
  CHECK(t->at(4).overlaps(Interval::from_rational(Rational(1, 8), 128)));
  CHECK(t->at(1).overlaps(Interval::from_long(1, 128)));
}
