#include <cmath>

#include "doctest.h"

#include "cantorlab/dimension.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/geometry.hpp"
#include "cantorlab/measure.hpp"
#include "cantorlab/verify.hpp"

using namespace cantorlab;

namespace {

// Largest eigenvalue of [[0, a], [a, b]], the K = 1 transfer matrix.
double two_state_radius(double s) {
  const double q = 3.0 / (M_PI * M_PI);
  const double a = std::pow(q, s);
  const double b = std::pow(q / 4, s);
  return (b + std::sqrt(b * b + 4 * a * a)) / 2;
}

}  // namespace

TEST_CASE("dimension series of a fixed word") {
  const std::vector<Symbol> w{2, 1, 0, 3};
  for (long prec : {53L, 200L}) {
    CAPTURE(prec);
    const DimSeries s = dim_series(w, Rational(3, 4), prec);
    REQUIRE(s.depth() == 4);
    CHECK(s.at(4).log_len == doctest::Approx(std::log(0.00023712838122036074925)).epsilon(1e-14));
    CHECK(s.at(4).log_mass == doctest::Approx(std::log(0.00043552294066036634704)).epsilon(1e-14));
    CHECK(s.at(4).ratio == doctest::Approx(0.92716515855766387786).epsilon(1e-13));
    CHECK(s.at(1).ratio == doctest::Approx(std::log(2 * std::pow(2.0, -1.5) / (2 * 2.6123753486854883433)) /
                                           std::log(0.30396355092701331433 / 4))
                               .epsilon(1e-13));
  }
  const DimSeries one = dim_series(std::vector<Symbol>{1}, Rational(3, 4));
  CHECK(one.at(1).ratio == doctest::Approx(0.80636682397559159187).epsilon(1e-13));
  CHECK_THROWS_AS(dim_series(std::vector<Symbol>{1, 0, 0}, Rational(3, 4)), DomainError);
}

TEST_CASE("property: log identities along random words") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const AdmissibleWord w = random_admissible_word(rng, 8, 50);
    const DimSeries fast = dim_series(w.symbols(), Rational(9, 10), 53);
    const DimSeries slow = dim_series(w.symbols(), Rational(9, 10), 256);
    for (std::uint64_t n = 1; n <= w.depth(); ++n) {
      const AdmissibleWord pre = w.prefix(n);
      const double log_len = std::log(cylinder_length(pre).evaluate(128).mid_double());
      const double log_mass = CylinderMass(pre, Rational(9, 10)).log_evaluate(128).mid_double();
      CHECK(fast.at(n).log_len == doctest::Approx(log_len).epsilon(1e-13));
      CHECK(fast.at(n).log_mass == doctest::Approx(log_mass).epsilon(1e-13));
      CHECK(slow.at(n).ratio == doctest::Approx(fast.at(n).ratio).epsilon(1e-13));
      CHECK(fast.at(n).ratio == doctest::Approx(log_mass / log_len).epsilon(1e-13));
    }
  }
}

TEST_CASE("furstenberg ratio on a constant-step path") {
  // Each step has denominator 1, so log r_n = n log q and the ratio is (n+1)/n.
  std::vector<Symbol> up;
  for (Symbol k = 1; k <= 60; ++k) up.push_back(k);
  const DimSeries s = dim_series(up, Rational(3, 4));
  CHECK(s.at(10).furstenberg_ratio == doctest::Approx(11.0 / 10.0).epsilon(1e-14));
  CHECK(furstenberg_ratio_check(s, 10) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(furstenberg_ratio_check(s, 20) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("property: infima are monotone") {
  WalkParams p;
  p.steps = 3000;
  p.seed = 12;
  const DimSeries s = dim_series(simulate(p, 0), p.alpha);
  const auto run = running_infimum(s, 100);
  const auto tail = tail_infimum(s, 100);
  REQUIRE(run.size() == 2901);
  REQUIRE(tail.size() == 2901);
  for (std::size_t i = 1; i < run.size(); ++i) {
    CHECK(run[i] <= run[i - 1]);
    CHECK(tail[i] >= tail[i - 1]);
  }
  CHECK(tail.back() == s.at(3000).ratio);
  CHECK(run.front() == s.at(100).ratio);
}

TEST_CASE("two-state transfer matrix") {
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    CAPTURE(s);
    const LambdaSample l = transfer_radius(1, s);
    CHECK(l.lambda == doctest::Approx(two_state_radius(s)).epsilon(1e-10));
    CHECK(l.lambda_lo <= l.lambda * (1 + 1e-12));
    CHECK(l.lambda_hi >= l.lambda * (1 - 1e-12));
  }
  // Independent root of the closed form by bisection.
  double lo = 0, hi = 1;
  for (int i = 0; i < 60; ++i) {
    const double mid = (lo + hi) / 2;
    (two_state_radius(mid) > 1 ? lo : hi) = mid;
  }
  const PressureEstimate e = pressure_dimension(1, 1e-9);
  CHECK(e.s_star == doctest::Approx(lo).epsilon(1e-7));
  CHECK(e.s_star == doctest::Approx(0.279711).epsilon(1e-5));
  CHECK(e.s_hi - e.s_lo <= 1e-9);
}

TEST_CASE("property: pressure is decreasing in s and the root grows with K") {
  double prev = std::numeric_limits<double>::infinity();
  for (double s = 0; s <= 1.0001; s += 0.125) {
    const double l = transfer_radius(8, s).lambda;
    CHECK(l < prev);
    prev = l;
  }
  double last = 0;
  for (std::int64_t K : {1, 2, 5, 20}) {
    const double s = pressure_dimension(K).s_star;
    CHECK(s > last);
    CHECK(s < 1);
    last = s;
  }
  CHECK_THROWS_AS(pressure_dimension(0), DomainError);
}

TEST_CASE("lebesgue mass per level") {
  CHECK(retained_fraction(0) == 0.5);
  CHECK(retained_fraction(1) == doctest::Approx(0.5 + 0.30396355092701331433 * 1.25).epsilon(1e-15));
  const LebesgueDecay d = lebesgue_mass_decay(6, 1000);
  REQUIRE(d.levels.size() == 6);
  CHECK(d.levels[0].lower == doctest::Approx(0.499696188380188).epsilon(1e-12));
  CHECK(d.levels[0].upper == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.levels[1].lower == doctest::Approx(0.44954294694994).epsilon(1e-12));
  CHECK(d.levels[1].upper == doctest::Approx(0.450000046127686).epsilon(1e-12));
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    CHECK(d.levels[i].lower <= d.levels[i].upper);
    if (i > 0) CHECK(d.levels[i].upper < d.levels[i - 1].upper);
  }
  CHECK(d.mean_rate < 1);
  const LebesgueDecay coarse = lebesgue_mass_decay(6, 50);
  CHECK(coarse.levels[5].lower <= d.levels[5].lower);
}
