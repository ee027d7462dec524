#include <cmath>
#include <set>

#include "doctest.h"

#include "cantorlab/error.hpp"
#include "cantorlab/walks.hpp"
#include "cantorlab/zeta.hpp"

using namespace cantorlab;

namespace {

WalkParams make(WalkKind kind, std::uint64_t steps, std::uint64_t seed) {
  WalkParams p;
  p.kind = kind;
  p.steps = steps;
  p.seed = seed;
  return p;
}

// |observed - expected| in binomial standard deviations.
double z_score(std::uint64_t hits, std::uint64_t n, double p) {
  return (static_cast<double>(hits) - n * p) / std::sqrt(n * p * (1 - p));
}

}  // namespace

TEST_CASE("seed derivation") {
  // Reference output of SplitMix64 started from state 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(derive_seed(7, 3) == splitmix64(splitmix64(7) + 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(uniform01(0) == 0.0);
  CHECK(uniform01(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("walk kinds and parameter checks") {
  CHECK(parse_walk_kind("cauchy_Z") == WalkKind::CauchyZ);
  CHECK(parse_walk_kind("folded") == WalkKind::Folded);
  CHECK(parse_walk_kind("dissipative") == WalkKind::Dissipative);
  CHECK_THROWS_AS(parse_walk_kind("levy"), DomainError);
  CHECK(to_string(WalkKind::CauchyZ) == "cauchy_Z");
  WalkParams p = make(WalkKind::Folded, 10, 0);
  p.beta = Rational(2);
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_NOTHROW(p.validate(true));
  p.beta = Rational(1);
  CHECK_THROWS_AS(p.validate(true), DomainError);
  WalkParams d = make(WalkKind::Dissipative, 10, 0);
  d.alpha = Rational(9, 10);
  CHECK(d.jump_exponent() == Rational(9, 5));
}

TEST_CASE("sampler head table") {
  const auto s = ZetaJumpSampler::shared(Rational(3, 2));
  CHECK(s == ZetaJumpSampler::shared(Rational(3, 2)));
  CHECK(s->cdf(1) == doctest::Approx(1 / 2.6123753486854883433).epsilon(1e-14));
  CHECK(s->cdf(2) == doctest::Approx((1 + std::pow(2.0, -1.5)) / 2.6123753486854883433).epsilon(1e-14));
  const double head_tail = zeta_tail(Rational(3, 2), BigInt(65537), 128).mid_double() / 2.6123753486854883433;
  CHECK(s->head_mass() == doctest::Approx(1 - head_tail).epsilon(1e-14));
}

TEST_CASE("property: sampler frequencies match the zeta law") {
  const auto s = ZetaJumpSampler::shared(Rational(3, 2));
  Rng rng(2024);
  const std::uint64_t n = 400000;
  std::uint64_t ones = 0, twos = 0, positive = 0, big = 0, huge = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::int64_t j = s->sample(rng);
    REQUIRE(j != 0);
    const std::int64_t a = j < 0 ? -j : j;
    ones += a == 1;
    twos += a == 2;
    positive += j > 0;
    big += a >= 1000;
    huge += a > 65536;
  }
  const double z = 2.6123753486854883433;
  CHECK(std::fabs(z_score(ones, n, 1 / z)) < 5);
  CHECK(std::fabs(z_score(twos, n, std::pow(2.0, -1.5) / z)) < 5);
  CHECK(std::fabs(z_score(positive, n, 0.5)) < 5);
  CHECK(std::fabs(z_score(big, n, 0.024216033341589747199)) < 5);
  CHECK(std::fabs(z_score(huge, n, 1 - s->head_mass())) < 5);
}

TEST_CASE("property: simulations replay exactly") {
  for (WalkKind kind : {WalkKind::CauchyZ, WalkKind::Folded, WalkKind::Dissipative}) {
    const WalkParams p = make(kind, 500, 99);
    const WalkPath a = simulate(p, 3);
    const WalkPath b = simulate(p, 3);
    CHECK(a.states == b.states);
    CHECK(a.jumps == b.jumps);
    CHECK(a.states.size() == 501);
    CHECK(a.states.front() == 0);
    CHECK(simulate(p, 4).states != a.states);
  }
}

TEST_CASE("property: folded walk is the modulus of the signed walk") {
  const WalkPath signed_path = simulate(make(WalkKind::CauchyZ, 2000, 5), 0);
  const WalkPath folded = simulate(make(WalkKind::Folded, 2000, 5), 0);
  CHECK(signed_path.jumps == folded.jumps);
  for (std::size_t t = 0; t < folded.states.size(); ++t) {
    CHECK(folded.states[t] == std::llabs(signed_path.states[t]));
  }
}

TEST_CASE("property: dissipative steps fold the shared jump stream") {
  WalkParams d = make(WalkKind::Dissipative, 2000, 8);
  WalkParams c = make(WalkKind::CauchyZ, 2000, 8);
  c.beta = 2 * d.alpha;
  const WalkPath dp = simulate(d, 1);
  const WalkPath cp = simulate(c, 1);
  CHECK(dp.jumps == cp.jumps);
  bool legal = true;
  for (std::size_t t = 0; t + 1 < dp.states.size(); ++t) {
    legal = legal && dp.states[t + 1] == std::llabs(dp.states[t] + dp.jumps[t]);
    legal = legal && is_legal_transition(dp.states[t], dp.states[t + 1]);
  }
  CHECK(legal);
  CHECK(is_admissible(dp.prefix_word(2000).symbols()));
}

TEST_CASE("stepper reset and overflow") {
  WalkStepper st(make(WalkKind::CauchyZ, 0, 0), 1);
  st.reset(kMaxWalkMagnitude - 1);
  CHECK(st.state() == kMaxWalkMagnitude - 1);
  bool thrown = false;
  for (int i = 0; i < 200 && !thrown; ++i) {
    try {
      st.step();
    } catch (const OverflowError&) {
      thrown = true;
    }
  }
  CHECK(thrown);
}

TEST_CASE("folded kernel identity by two routes") {
  for (const char* beta : {"3/2", "6/5"}) {
    CAPTURE(beta);
    const Interval defect = folded_kernel_identity(parse_rational(beta), 30, 256);
    CHECK(defect.hi_double() < 1e-60);
  }
}

TEST_CASE("parallel_for writes every slot once") {
  std::vector<int> slots(1000, 0);
  parallel_for(slots.size(), 4, [&](std::size_t i) { slots[i] += static_cast<int>(i); });
  for (std::size_t i = 0; i < slots.size(); ++i) CHECK(slots[i] == static_cast<int>(i));
}

TEST_CASE("transience summary is reproducible") {
  const WalkParams p = make(WalkKind::Dissipative, 2000, 17);
  const TransienceReport a = transience_stats(p, 40, {100, 1000}, {1, 10}, 2);
  const TransienceReport b = transience_stats(p, 40, {100, 1000}, {1, 10}, 1);
  REQUIRE(a.checkpoints.size() == 2);
  CHECK(a.checkpoints[1].quantiles == b.checkpoints[1].quantiles);
  CHECK(a.checkpoints[0].zero_visit_fraction >= a.checkpoints[1].zero_visit_fraction);
  CHECK(a.checkpoints[1].min_at_least[0] >= a.checkpoints[1].min_at_least[1]);
  CHECK(a.path_seeds[5] == derive_seed(17, 5));
  CHECK_THROWS_AS(transience_stats(make(WalkKind::Folded, 10, 0), 2, {5}), DomainError);
}

TEST_CASE("increment tails and summability") {
  const TailProbability t = increment_tail_prob(Rational(3, 2), Rational(3, 2), 100, 128);
  CHECK(t.threshold == 1000);
  CHECK(t.prob.mid_double() == doctest::Approx(0.024216033341589747199).epsilon(1e-12));
  CHECK(t.integral_lo.lo_double() <= t.prob.hi_double());
  CHECK(t.prob.lo_double() <= t.integral_hi.hi_double());
  CHECK(t.summability == "divergent");
  CHECK(summability_verdict(Rational(3, 2), Rational(3)) == "convergent");
  CHECK(summability_verdict(Rational(3, 2), Rational(2)) == "divergent (harmonic comparison)");
  CHECK(summability_verdict(Rational(3, 2), Rational(1)) == "divergent");
}

TEST_CASE("envelope thresholds and violations") {
  CHECK(envelope_thresholds(Rational(3, 2), 5) == std::vector<std::int64_t>{0, 1, 2, 5, 8});
  const std::vector<std::int64_t> states{0, 1, 3, 9, 9, 30};
  const auto th = envelope_thresholds(Rational(1), 5);
  CHECK(gamma_envelope_violations(states, th, 1) == 3);  // n = 1, 2, 4
  CHECK(gamma_envelope_violations(states, th, 3) == 1);
}

TEST_CASE("type 7 quantiles") {
  CHECK(quantile({4, 1, 3, 2}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
  CHECK(quantile({1, 2, 3, 4}, 0.0) == 1);
  CHECK(quantile({1, 2, 3, 4}, 1.0) == 4);
  CHECK(quantile({7}, 0.3) == 7);
}
