#include "cantorlab/verify.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "cantorlab/dimension.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/geometry.hpp"
#include "cantorlab/measure.hpp"
#include "cantorlab/zeta.hpp"

namespace cantorlab {

using nlohmann::json;

namespace {

template <typename F>
CriterionResult timed(std::string id, std::string title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r{std::move(id), std::move(title), false, "", json::object(), 0};
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.summary = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// Seed for sub-experiment `tag` of the suite.
std::uint64_t seed_for(const VerifyOptions& opt, std::uint64_t tag) { return derive_seed(opt.seed, tag); }

double relative_width(const Interval& lo, const Interval& hi, const Interval& scale) {
  return (hi - lo).hi_double() / scale.lo_double();
}

}  // namespace

AdmissibleWord random_admissible_word(Rng& rng, std::size_t max_depth, Symbol max_symbol) {
  if (max_depth < 1 || max_symbol < 1) throw DomainError("random_admissible_word needs depth, symbol >= 1");
  const std::size_t depth = 1 + rng() % max_depth;
  std::vector<Symbol> s;
  Symbol prev = 0;
  while (s.size() < depth) {
    const Symbol k = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(max_symbol + 1));
    if (!is_legal_transition(prev, k)) continue;
    s.push_back(k);
    prev = k;
  }
  return AdmissibleWord(std::move(s));
}

// ---------------------------------------------------------------------------
// 1. Left half exactly filled

CriterionResult check_partition_identity(const VerifyOptions& opt) {
  return timed("C1", "partition identity", [&](CriterionResult& r) {
    const std::uint64_t L = 100000;
    const std::size_t words = 1000;
    Rng rng(seed_for(opt, 1));
    std::size_t failures = 0;
    double worst_width = 0;
    for (std::size_t i = 0; i < words; ++i) {
      const AdmissibleWord w = random_admissible_word(rng, 30, 40);
      const PartitionBracket b = left_block_bracket(w, L, opt.precision);
      const Interval len = b.half_length + b.half_length;
      const double width = relative_width(b.lower(), b.upper(), len);
      worst_width = std::max(worst_width, width);
      if (!b.holds() || !(width < 1e-4)) ++failures;
    }
    // Second route for a few words: the exact placement of child k + L' + 1
    // must start where the first L' left-block children end.
    Rng rng2(seed_for(opt, 11));
    std::size_t placement_failures = 0;
    const std::uint64_t Lp = 1000;
    for (int i = 0; i < 10; ++i) {
      const AdmissibleWord w = random_admissible_word(rng2, 30, 40);
      const QPolynomial offset = cylinder_interval(w.extended(w.last() + static_cast<Symbol>(Lp) + 1)).left -
                                 cylinder_interval(w).left;
      const PartitionBracket b = left_block_bracket(w, Lp, opt.precision);
      if (!offset.evaluate(opt.precision).overlaps(b.partial)) ++placement_failures;
    }
    r.passed = failures == 0 && placement_failures == 0;
    r.summary = std::to_string(words - failures) + "/" + std::to_string(words) +
                " brackets contain |I|/2, max width " + fmt(worst_width, 3) + "|I|";
    r.details = {{"words", words}, {"L", L}, {"failures", failures}, {"max_relative_width", worst_width},
                 {"placement_cross_checks", 10}, {"placement_failures", placement_failures}};
  });
}

// ---------------------------------------------------------------------------
// 2. Consistency

CriterionResult check_consistency(const VerifyOptions& opt) {
  return timed("C2", "measure consistency", [&](CriterionResult& r) {
    const std::int64_t K = 10000;
    const std::array<Rational, 3> alphas{Rational(3, 5), Rational(3, 4), Rational(9, 10)};
    Rng rng(seed_for(opt, 2));
    std::size_t checked = 0;
    std::size_t failures = 0;
    double worst = 0;
    for (const Rational& a : alphas) {
      const MeasureParams params{a, opt.precision};
      for (int i = 0; i < 100; ++i) {
        const AdmissibleWord w = random_admissible_word(rng, 8, 40);
        const ConsistencyReport c = consistency_defect(w, params, K);
        ++checked;
        if (!c.holds()) ++failures;
        worst = std::max(worst, relative_width(c.lower(), c.upper(), c.parent_mass));
      }
    }
    r.passed = failures == 0;
    r.summary = std::to_string(checked - failures) + "/" + std::to_string(checked) +
                " brackets contain the parent mass (K = 10^4), max relative width " + fmt(worst, 3);
    r.details = {{"checked", checked}, {"failures", failures}, {"K", K}, {"max_relative_width", worst}};
  });
}

// ---------------------------------------------------------------------------
// 3. Folded kernel identity

CriterionResult check_folded_identity(const VerifyOptions&) {
  return timed("C3", "folded-kernel identity", [&](CriterionResult& r) {
    r.passed = true;
    std::string s;
    for (const Rational& beta : {Rational(6, 5), Rational(3, 2), Rational(9, 5)}) {
      const double d = folded_kernel_identity(beta, 100, 256).hi_double();
      r.details[to_string(beta)] = d;
      r.passed = r.passed && d < 1e-50;
      s += (s.empty() ? "" : ", ") + std::string("beta=") + to_string(beta) + ": " + fmt(d, 3);
    }
    r.summary = "max defect " + s + " (limit 1e-50)";
  });
}

// ---------------------------------------------------------------------------
// 4. One-step frequencies

CriterionResult check_kernel_empirical(const VerifyOptions& opt) {
  return timed("C4", "kernel/empirical agreement", [&](CriterionResult& r) {
    const std::uint64_t N = 1000000;
    const MeasureParams params{Rational(3, 4), 128};
    WalkParams wp;
    wp.kind = WalkKind::Dissipative;
    wp.alpha = params.alpha;
    double worst = 0;
    std::size_t cells = 0;
    std::size_t outside = 0;
    for (std::int64_t m : {0, 1, 2, 5, 20}) {
      // Cells: l in [m-2, m+2], l = 0, and everything else pooled.
      std::vector<std::int64_t> ls;
      for (std::int64_t l = std::max<std::int64_t>(0, m - 2); l <= m + 2; ++l) ls.push_back(l);
      if (ls.front() != 0) ls.insert(ls.begin(), 0);
      std::vector<std::uint64_t> counts(ls.size() + 1, 0);
      WalkStepper w(wp, seed_for(opt, 400 + static_cast<std::uint64_t>(m)));
      for (std::uint64_t i = 0; i < N; ++i) {
        w.reset(m);
        const std::int64_t l = w.step();
        const auto it = std::find(ls.begin(), ls.end(), l);
        ++counts[static_cast<std::size_t>(it - ls.begin())];
      }
      double rest = 1;
      json row = json::array();
      for (std::size_t c = 0; c <= ls.size(); ++c) {
        double p;
        if (c < ls.size()) {
          p = transition_prob(m, ls[c], params).mid_double();
          rest -= p;
        } else {
          p = rest;
        }
        const double expected = static_cast<double>(N) * p;
        const double sd = std::sqrt(expected * (1 - p));
        const double z = sd > 0 ? (static_cast<double>(counts[c]) - expected) / sd
                                : (counts[c] == 0 ? 0.0 : INFINITY);
        ++cells;
        if (!(std::abs(z) <= 3)) ++outside;
        worst = std::max(worst, std::abs(z));
        row.push_back({{"l", c < ls.size() ? json(ls[c]) : json("other")}, {"count", counts[c]}, {"p", p}, {"z", z}});
      }
      r.details["m=" + std::to_string(m)] = row;
    }
    r.passed = outside == 0;
    r.summary = std::to_string(cells - outside) + "/" + std::to_string(cells) + " cells within 3 sigma, max |z| " +
                fmt(worst, 3);
  });
}

// ---------------------------------------------------------------------------
// 5. Path law

CriterionResult check_path_law(const VerifyOptions& opt) {
  return timed("C5", "path law = cylinder mass", [&](CriterionResult& r) {
    const std::uint64_t paths = 1000000;
    const double min_mass = 1e-3;
    const MeasureParams params{Rational(3, 4), 128};
    const double norm = (Interval::from_long(2, 128) * zeta(params.exponent(), 128)).mid_double();
    const double e = to_double(params.exponent());

    // Depth-3 words with mass >= 10^-3. Left-block child masses decrease
    // with the symbol, so the scan stops at the first light one.
    std::vector<AdmissibleWord> words;
    std::vector<double> masses;
    std::function<void(const AdmissibleWord&, double)> visit = [&](const AdmissibleWord& w, double mass) {
      if (w.depth() == 3) {
        words.push_back(w);
        masses.push_back(cylinder_mass(w, params).evaluate(128).mid_double());
        return;
      }
      const Symbol k = w.last();
      for (Symbol c = 0;; ++c) {
        if (!is_legal_transition(k, c)) continue;
        const double child = mass * std::exp(StepFactor::of(k, c).log_value(e)) / norm;
        if (child >= min_mass) {
          visit(w.extended(c), child);
        } else if (c > k) {
          break;
        }
      }
    };
    visit(AdmissibleWord(), 1.0);
    std::map<std::array<std::int64_t, 3>, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto& s = words[i].symbols();
      index[{s[0], s[1], s[2]}] = i;
    }

    WalkParams wp;
    wp.kind = WalkKind::Dissipative;
    wp.alpha = params.alpha;
    wp.steps = 3;
    wp.seed = seed_for(opt, 5);
    const std::size_t chunks = 100;
    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(words.size(), 0));
    parallel_for(chunks, opt.threads, [&](std::size_t chunk) {
      const std::uint64_t per = paths / chunks;
      for (std::uint64_t p = chunk * per; p < (chunk + 1) * per; ++p) {
        WalkStepper w(wp, derive_seed(wp.seed, p));
        std::array<std::int64_t, 3> key{w.step(), w.step(), w.step()};
        const auto it = index.find(key);
        if (it != index.end()) ++partial[chunk][it->second];
      }
    });
    std::size_t outside = 0;
    double worst = 0;
    double chi2 = 0;
    json rows = json::array();
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::uint64_t count = 0;
      for (const auto& c : partial) count += c[i];
      const double expected = static_cast<double>(paths) * masses[i];
      const double z = (static_cast<double>(count) - expected) / std::sqrt(expected * (1 - masses[i]));
      chi2 += z * z;
      worst = std::max(worst, std::abs(z));
      if (!(std::abs(z) <= 3)) ++outside;
      rows.push_back({{"word", words[i].to_string()}, {"mass", masses[i]}, {"count", count}, {"z", z}});
    }
    r.passed = outside == 0 && !words.empty();
    r.summary = std::to_string(words.size() - outside) + "/" + std::to_string(words.size()) +
                " prefixes within 3 sigma, max |z| " + fmt(worst, 3) + ", sum z^2 " + fmt(chi2, 4);
    r.details = {{"paths", paths}, {"prefixes", words.size()}, {"outside", outside}, {"sum_z2", chi2},
                 {"cells", rows}};
  });
}

// ---------------------------------------------------------------------------
// 6. Transience

CriterionResult check_transience(const VerifyOptions& opt) {
  return timed("C6", "transience trend", [&](CriterionResult& r) {
    const std::vector<std::uint64_t> checkpoints{100, 1000, 10000};
    WalkParams p;
    p.kind = WalkKind::Dissipative;
    p.steps = 100000;
    p.seed = seed_for(opt, 6);
    p.alpha = Rational(3, 4);
    const TransienceReport main = transience_stats(p, 1000, checkpoints, {1, 10, 100, 1000}, opt.threads);
    p.alpha = Rational(999, 1000);
    const TransienceReport contrast = transience_stats(p, 1000, checkpoints, {1, 10, 100, 1000}, opt.threads);
    bool ok = true;
    json rows = json::array();
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      const double f = main.checkpoints[c].zero_visit_fraction;
      const double g = contrast.checkpoints[c].zero_visit_fraction;
      if (c > 0 && f > main.checkpoints[c - 1].zero_visit_fraction) ok = false;
      if (!(g > f)) ok = false;
      rows.push_back({{"t", checkpoints[c]}, {"alpha_3/4", f}, {"alpha_999/1000", g},
                      {"median_3/4", main.checkpoints[c].quantiles[2]},
                      {"median_999/1000", contrast.checkpoints[c].quantiles[2]}});
    }
    const double last = main.checkpoints.back().zero_visit_fraction;
    ok = ok && last < 0.2;
    r.passed = ok;
    std::string s = "zero-visit fraction alpha=3/4:";
    for (const auto& c : main.checkpoints) s += " " + fmt(c.zero_visit_fraction, 4);
    s += "; alpha=999/1000:";
    for (const auto& c : contrast.checkpoints) s += " " + fmt(c.zero_visit_fraction, 4);
    r.summary = s;
    r.details = {{"checkpoints", rows}, {"paths", 1000}, {"steps", p.steps}, {"threshold_at_1e4", 0.2}};
  });
}

// ---------------------------------------------------------------------------
// 7. Borel-Cantelli tails

CriterionResult check_borel_cantelli(const VerifyOptions& opt) {
  return timed("C7", "Borel-Cantelli tails", [&](CriterionResult& r) {
    const Rational beta(3, 2);
    const Rational gamma(3);
    const std::uint64_t n0 = 100;
    const std::uint64_t steps = 100000;
    const std::uint64_t paths = 1000;
    const long prec = 128;

    // Brackets of p_n = P(|J| >= n^gamma) must decrease with n.
    std::size_t monotone_failures = 0;
    Interval prev = increment_tail_prob(beta, gamma, 1, prec).prob;
    for (std::uint64_t n = 2; n < steps; ++n) {
      Interval cur = increment_tail_prob(beta, gamma, n, prec).prob;
      if (!mpfr_lessequal_p(cur.hi(), prev.hi()) || !mpfr_lessequal_p(cur.lo(), prev.lo())) ++monotone_failures;
      prev = std::move(cur);
    }

    // Exact law of the violation count: for the signed walk the increment
    // at index n is the jump itself, exceeding n^gamma with probability
    // P(|J| >= floor(n^gamma) + 1).
    const std::vector<std::int64_t> thresholds = envelope_thresholds(gamma, steps);
    double mean_lo = 0;
    double mean_hi = 0;
    double var = 0;
    for (std::uint64_t n = n0; n < steps; ++n) {
      const Interval p = jump_tail_prob(beta, BigInt(static_cast<long>(thresholds[n])) + 1, prec);
      mean_lo += p.lo_double();
      mean_hi += p.hi_double();
      var += p.hi_double() * (1 - p.lo_double());
    }
    const double P = static_cast<double>(paths);
    const double sigma = std::sqrt(P * var);
    const double band_lo = P * mean_lo - 3 * sigma;
    const double band_hi = P * mean_hi + 3 * sigma;

    WalkParams signed_walk;
    signed_walk.kind = WalkKind::CauchyZ;
    signed_walk.beta = beta;
    signed_walk.steps = steps;
    signed_walk.seed = seed_for(opt, 7);
    WalkParams dissipative = signed_walk;
    dissipative.kind = WalkKind::Dissipative;
    dissipative.alpha = beta / 2;
    std::vector<std::uint64_t> v_signed(paths), v_diss(paths);
    std::vector<char> coupled(paths, 0);
    parallel_for(paths, opt.threads, [&](std::size_t i) {
      const WalkPath a = simulate(signed_walk, i);
      const WalkPath b = simulate(dissipative, i);
      v_signed[i] = gamma_envelope_violations(a.states, thresholds, n0);
      v_diss[i] = gamma_envelope_violations(b.states, thresholds, n0);
      coupled[i] = a.jumps == b.jumps && v_diss[i] <= v_signed[i];
    });
    std::uint64_t total_signed = 0;
    std::uint64_t total_diss = 0;
    std::size_t coupling_failures = 0;
    std::size_t zero_paths = 0;
    for (std::size_t i = 0; i < paths; ++i) {
      total_signed += v_signed[i];
      total_diss += v_diss[i];
      if (!coupled[i]) ++coupling_failures;
      if (v_diss[i] == 0) ++zero_paths;
    }
    const std::string verdict = summability_verdict(beta, gamma);
    const double ts = static_cast<double>(total_signed);
    const double td = static_cast<double>(total_diss);
    r.passed = monotone_failures == 0 && verdict == "convergent" && ts >= band_lo && ts <= band_hi &&
               td <= band_hi && coupling_failures == 0;
    r.summary = "violations signed " + std::to_string(total_signed) + ", dissipative " +
                std::to_string(total_diss) + " vs band [" + fmt(band_lo, 5) + ", " + fmt(band_hi, 5) +
                "]; tail brackets monotone on n < 10^5: " + (monotone_failures == 0 ? "yes" : "no");
    r.details = {{"beta", "3/2"}, {"gamma", "3"}, {"n0", n0}, {"steps", steps}, {"paths", paths},
                 {"expected_lo", P * mean_lo}, {"expected_hi", P * mean_hi}, {"sigma", sigma},
                 {"band", {band_lo, band_hi}}, {"signed_violations", total_signed},
                 {"dissipative_violations", total_diss}, {"dissipative_paths_without_violation", zero_paths},
                 {"coupling_failures", coupling_failures}, {"monotone_failures", monotone_failures},
                 {"summability", verdict}};
  });
}

// ---------------------------------------------------------------------------
// 8, 9. Pointwise dimension and Furstenberg ratio

std::vector<CriterionResult> check_pointwise_dimension(const VerifyOptions& opt) {
  const std::size_t paths = 100;
  const std::uint64_t depth = 10000;
  const std::uint64_t n0 = 1000;
  WalkParams p;
  p.kind = WalkKind::Dissipative;
  p.alpha = Rational(9, 10);
  p.steps = depth;
  p.seed = seed_for(opt, 8);
  std::vector<double> final_ratio(paths), deviation(paths);
  std::vector<char> tail_monotone(paths), running_flat(paths);
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    parallel_for(paths, opt.threads, [&](std::size_t i) {
      const DimSeries s = dim_series(simulate(p, i), p.alpha);
      final_ratio[i] = s.at(depth).ratio;
      deviation[i] = furstenberg_ratio_check(s, n0);
      const std::vector<double> t = tail_infimum(s, n0);
      tail_monotone[i] = std::is_sorted(t.begin(), t.end());
      const std::vector<double> m = running_infimum(s, n0);
      running_flat[i] = m.back() == m.front();
    });
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double shared_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto c8 = timed("C8", "pointwise dimension", [&](CriterionResult& r) {
    if (!error.empty()) throw Error("simulation", error);
    const double q05 = quantile(final_ratio, 0.05);
    std::size_t monotone = 0;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < paths; ++i) {
      monotone += tail_monotone[i] ? 1 : 0;
      flat += running_flat[i] ? 1 : 0;
    }
    const double frac = static_cast<double>(monotone) / static_cast<double>(paths);
    r.passed = q05 > 0.75 && frac >= 0.9;
    r.summary = "5th percentile of ratio at depth 10^4 = " + fmt(q05, 5) + " (> 0.75); tail infimum beyond 10^3 " +
                "non-decreasing on " + std::to_string(monotone) + "/" + std::to_string(paths) + " paths";
    r.details = {{"alpha", "9/10"}, {"paths", paths}, {"depth", depth}, {"q05", q05},
                 {"median", quantile(final_ratio, 0.5)}, {"min", quantile(final_ratio, 0.0)},
                 {"tail_infimum_monotone_fraction", frac},
                 {"running_min_flat_fraction", static_cast<double>(flat) / static_cast<double>(paths)}};
  });
  c8.seconds += shared_seconds;
  auto c9 = timed("C9", "Furstenberg ratio", [&](CriterionResult& r) {
    if (!error.empty()) throw Error("simulation", error);
    const double worst = *std::max_element(deviation.begin(), deviation.end());
    r.passed = worst < 0.05;
    r.summary = "max |log r_{n+1}/log r_n - 1| beyond n0 = 10^3 over " + std::to_string(paths) + " paths: " +
                fmt(worst, 4) + " (< 0.05)";
    r.details = {{"max_deviation", worst}, {"median_deviation", quantile(deviation, 0.5)}};
  });
  return {c8, c9};
}

// ---------------------------------------------------------------------------
// 10. Pressure

namespace {

// Independent oracle: largest eigenvalue modulus from a dense eigensolver.
double dense_radius(std::int64_t K, double s) {
  const double q = Interval::q(128).mid_double();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(K + 1, K + 1);
  for (std::int64_t k = 0; k <= K; ++k) {
    for (std::int64_t l = 0; l <= K; ++l) {
      if (!is_legal_transition(k, l)) continue;
      const double d = static_cast<double>(step_denominator(k, l));
      T(k, l) = std::pow(q / (d * d), s);
    }
  }
  return T.eigenvalues().cwiseAbs().maxCoeff();
}

double dense_root(std::int64_t K) {
  double lo = 0;
  double hi = 1;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (dense_radius(K, mid) > 1 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CriterionResult check_pressure(const VerifyOptions&) {
  return timed("C10", "pressure monotonicity", [&](CriterionResult& r) {
    const std::vector<std::int64_t> cutoffs{2, 5, 10, 50, 100, 500};
    std::vector<double> s;
    json rows = json::array();
    for (std::int64_t K : cutoffs) {
      s.push_back(pressure_dimension(K, 1e-6).s_star);
      rows.push_back({{"K", K}, {"s_star", s.back()}});
    }
    bool ok = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!(s[i] < 1)) ok = false;
      if (i > 0 && !(s[i] > s[i - 1])) ok = false;
    }
    ok = ok && s.back() > s.front() + 0.1;
    double oracle_gap = 0;
    for (std::int64_t K : {1, 2, 3}) {
      const double a = pressure_dimension(K, 1e-6).s_star;
      const double b = dense_root(K);
      oracle_gap = std::max(oracle_gap, std::abs(a - b));
    }
    ok = ok && oracle_gap < 2e-6;
    r.passed = ok;
    std::string list;
    for (std::size_t i = 0; i < s.size(); ++i) {
      list += (i ? ", " : "") + std::to_string(cutoffs[i]) + ":" + fmt(s[i], 7);
    }
    r.summary = "s*(K) = " + list + "; dense-eigensolver gap at K <= 3: " + fmt(oracle_gap, 3);
    r.details = {{"estimates", rows}, {"oracle_gap", oracle_gap}};
  });
}

// ---------------------------------------------------------------------------
// 11. Lebesgue mass

CriterionResult check_lebesgue(const VerifyOptions&) {
  return timed("C11", "level-mass decay", [&](CriterionResult& r) {
    double worst = 0;
    for (std::int64_t K : {2, 5, 20}) {
      const LebesgueDecay d = lebesgue_mass_decay(3, K);
      std::vector<AdmissibleWord> level{AdmissibleWord()};
      for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<AdmissibleWord> next;
        Rational total = 0;
        for (const auto& w : level) {
          for (auto& c : children(w, K)) {
            total += cylinder_length(c).coeff;
            next.push_back(std::move(c));
          }
        }
        const double exact = QPolynomial::monomial(total, static_cast<int>(n)).evaluate(128).mid_double();
        worst = std::max(worst, std::abs(d.levels[n - 1].lower - exact) / exact);
        level = std::move(next);
      }
    }
    const LebesgueDecay big = lebesgue_mass_decay(50, 1000);
    bool decreasing = true;
    for (std::size_t i = 1; i < big.levels.size(); ++i) {
      if (!(big.levels[i].lower < big.levels[i - 1].lower) || !(big.levels[i].upper < big.levels[i - 1].upper)) {
        decreasing = false;
      }
    }
    r.passed = worst < 1e-12 && decreasing;
    r.summary = "max relative gap to enumeration (N <= 3, K <= 20) " + fmt(worst, 3) +
                "; levels 1..50 at K = 10^3 strictly decreasing: " + (decreasing ? "yes" : "no") +
                ", level 50 in [" + fmt(big.levels.back().lower, 6) + ", " + fmt(big.levels.back().upper, 6) + "]";
    r.details = {{"max_relative_gap", worst}, {"level50_lower", big.levels.back().lower},
                 {"level50_upper", big.levels.back().upper}, {"mean_rate", big.mean_rate}};
  });
}

// ---------------------------------------------------------------------------

std::vector<CriterionResult> run_quick_checks(const VerifyOptions& opt) {
  std::vector<CriterionResult> out;
  out.push_back(timed("Q1", "kernel row sums", [&](CriterionResult& r) {
    std::size_t failures = 0;
    for (const Rational& a : {Rational(3, 4), Rational(9, 10), Rational(1)}) {
      for (Symbol m = 0; m <= 20; ++m) {
        if (!kernel_row_sum(m, MeasureParams{a, opt.precision}, 1000).holds()) ++failures;
      }
    }
    // At alpha = 1 every weight is rational: sum_{l <= K} weight(m, l) is
    // H2(K - m) + H2(K + m) exactly.
    const Symbol K = 60;
    for (Symbol m = 0; m <= 10; ++m) {
      Rational sum = 0;
      for (Symbol l = 0; l <= K; ++l) sum += kernel_weight_alpha_one(m, l);
      const Rational expect = harmonic2(static_cast<unsigned long>(K - m)) + harmonic2(static_cast<unsigned long>(K + m));
      if (sum != expect) ++failures;
    }
    r.passed = failures == 0;
    r.summary = failures == 0 ? "all rows sum to 1 within their tail brackets" : std::to_string(failures) + " failures";
  }));
  out.push_back(timed("Q2", "folded-kernel identity", [&](CriterionResult& r) {
    const double d = folded_kernel_identity(Rational(3, 2), 50, opt.precision).hi_double();
    r.passed = d < std::ldexp(1.0, static_cast<int>(-opt.precision + 10));
    r.summary = "max defect " + fmt(d, 3);
  }));
  out.push_back(timed("Q3", "measure consistency", [&](CriterionResult& r) {
    const bool a = consistency_defect(AdmissibleWord(), {Rational(3, 4), opt.precision}, 10000).holds();
    const bool b = consistency_defect(AdmissibleWord({5}), {Rational(3, 4), opt.precision}, 10000).holds();
    const bool c = consistency_defect(AdmissibleWord({1, 0}), {Rational(9, 10), opt.precision}, 1000).holds();
    r.passed = a && b && c;
    r.summary = std::string("root: ") + (a ? "ok" : "FAIL") + ", (5): " + (b ? "ok" : "FAIL") +
                ", (1,0): " + (c ? "ok" : "FAIL");
  }));
  out.push_back(timed("Q4", "partition identity", [&](CriterionResult& r) {
    Rng rng(seed_for(opt, 1));
    std::size_t failures = 0;
    for (int i = 0; i < 20; ++i) {
      if (!left_block_bracket(random_admissible_word(rng, 30, 40), 10000, opt.precision).holds()) ++failures;
    }
    r.passed = failures == 0;
    r.summary = std::to_string(20 - failures) + "/20 brackets contain |I|/2";
  }));
  return out;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  auto add = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  add(check_partition_identity(opt));
  add(check_consistency(opt));
  add(check_folded_identity(opt));
  add(check_kernel_empirical(opt));
  add(check_path_law(opt));
  add(check_transience(opt));
  add(check_borel_cantelli(opt));
  for (auto& r : check_pointwise_dimension(opt)) add(std::move(r));
  add(check_pressure(opt));
  add(check_lebesgue(opt));
  return out;
}

}  // namespace cantorlab
