#include "cantorlab/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "cantorlab/error.hpp"
#include "cantorlab/measure.hpp"
#include "cantorlab/zeta.hpp"

namespace cantorlab {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t path_id) {
  return splitmix64(splitmix64(seed) + path_id);
}

std::string to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::CauchyZ:
      return "cauchy_Z";
    case WalkKind::Folded:
      return "folded";
    case WalkKind::Dissipative:
      break;
  }
  return "dissipative";
}

WalkKind parse_walk_kind(std::string_view text) {
  if (text == "cauchy_Z" || text == "cauchy") return WalkKind::CauchyZ;
  if (text == "folded") return WalkKind::Folded;
  if (text == "dissipative") return WalkKind::Dissipative;
  throw DomainError("unknown walk kind '" + std::string(text) + "'");
}

void WalkParams::validate(bool allow_boundary) const {
  if (kind == WalkKind::Dissipative) {
    if (alpha <= Rational(1, 2) || alpha > 1 || (alpha == 1 && !allow_boundary)) {
      throw DomainError("dissipative walk needs 1/2 < alpha < 1, got " + to_string(alpha));
    }
  } else if (beta <= 1 || beta > 2 || (beta == 2 && !allow_boundary)) {
    throw DomainError("zeta jumps need 1 < beta < 2, got " + to_string(beta));
  }
  if (jump_exponent() <= kMinZetaExponent) {
    throw DomainError("jump exponent " + to_string(jump_exponent()) + " too close to 1");
  }
}

// ---------------------------------------------------------------------------
// Zeta jumps

namespace {

constexpr std::size_t kGuideSize = 4096;

}  // namespace

ZetaJumpSampler::ZetaJumpSampler(const Rational& beta)
    : beta_exact_(beta), beta_(to_double(beta)) {
  if (beta <= kMinZetaExponent) throw DomainError("jump exponent too close to 1");
  const long double z = std::stold(zeta(beta, 128).decimal(25));
  const long double b = static_cast<long double>(beta_);
  cdf_.resize(kTableSize);
  long double acc = 0;
  for (std::uint64_t j = 1; j <= kTableSize; ++j) {
    acc += std::pow(static_cast<long double>(j), -b);
    cdf_[j - 1] = static_cast<double>(acc / z);
  }
  head_mass_ = cdf_.back();
  guide_.resize(kGuideSize);
  std::size_t i = 0;
  for (std::size_t g = 0; g < kGuideSize; ++g) {
    const double level = static_cast<double>(g) / kGuideSize;
    while (i + 1 < kTableSize && cdf_[i] <= level) ++i;
    guide_[g] = static_cast<std::uint32_t>(i);
  }
}

std::shared_ptr<const ZetaJumpSampler> ZetaJumpSampler::shared(const Rational& beta) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ZetaJumpSampler>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[to_string(beta)];
  if (!slot) slot = std::make_shared<const ZetaJumpSampler>(beta);
  return slot;
}

std::int64_t ZetaJumpSampler::draw_tail(Rng& rng) const {
  const double j0 = static_cast<double>(kTableSize);
  const double inv = -1.0 / (beta_ - 1.0);
  while (true) {
    const double v = 1.0 - uniform01(rng());  // (0, 1]
    const double y = j0 * std::pow(v, inv);
    if (!(y < 0x1.0p62)) throw OverflowError("zeta jump beyond 2^62");
    const double j = std::ceil(y);
    if (j <= j0) continue;
    // Target j^-beta against proposal mass int_{j-1}^{j} y^-beta dy.
    const double accept =
        (beta_ - 1.0) / (j * std::expm1((1.0 - beta_) * std::log1p(-1.0 / j)));
    if (uniform01(rng()) < accept) return static_cast<std::int64_t>(j);
  }
}

std::int64_t ZetaJumpSampler::sample(Rng& rng) const {
  const std::uint64_t x = rng();
  const double u = uniform01(x);
  std::int64_t magnitude;
  if (u < head_mass_) {
    const auto g = static_cast<std::size_t>(u * kGuideSize);
    const std::size_t lo = guide_[g];
    const std::size_t hi = g + 1 < kGuideSize ? guide_[g + 1] : kTableSize - 1;
    const auto it = std::upper_bound(cdf_.begin() + lo, cdf_.begin() + hi + 1, u);
    magnitude = static_cast<std::int64_t>(it - cdf_.begin()) + 1;
  } else {
    magnitude = draw_tail(rng);
  }
  return (x & 1) ? -magnitude : magnitude;
}

// ---------------------------------------------------------------------------
// Paths

WalkStepper::WalkStepper(const WalkParams& params, std::uint64_t path_seed)
    : kind_(params.kind), rng_(path_seed) {
  params.validate(true);
  sampler_ = ZetaJumpSampler::shared(params.jump_exponent());
}

std::int64_t WalkStepper::step() {
  jump_ = sampler_->sample(rng_);
  const std::int64_t base = kind_ == WalkKind::Dissipative ? visible_ : hidden_;
  if (std::abs(base) >= kMaxWalkMagnitude - std::abs(jump_)) {
    throw OverflowError("walk state beyond 2^62 at step " + std::to_string(time_ + 1));
  }
  switch (kind_) {
    case WalkKind::CauchyZ:
      hidden_ += jump_;
      visible_ = hidden_;
      break;
    case WalkKind::Folded:
      hidden_ += jump_;
      visible_ = std::abs(hidden_);
      break;
    case WalkKind::Dissipative:
      // |m + J| has exactly the law of the kernel row m (folding).
      visible_ = std::abs(visible_ + jump_);
      break;
  }
  ++time_;
  return visible_;
}

void WalkStepper::reset(std::int64_t state) {
  if (kind_ != WalkKind::CauchyZ && state < 0) throw DomainError("negative state for a walk on N0");
  if (std::abs(state) >= kMaxWalkMagnitude) throw OverflowError("walk state beyond 2^62");
  hidden_ = state;
  visible_ = kind_ == WalkKind::Folded ? std::abs(state) : state;
}

AdmissibleWord WalkPath::prefix_word(std::size_t n) const {
  if (n + 1 > states.size()) throw DomainError("path shorter than requested prefix");
  return AdmissibleWord(std::vector<Symbol>(states.begin() + 1, states.begin() + 1 + n));
}

WalkPath simulate(const WalkParams& params, std::uint64_t path_id) {
  WalkPath path{params, path_id, derive_seed(params.seed, path_id), {}, {}};
  path.states.reserve(params.steps + 1);
  path.jumps.reserve(params.steps);
  path.states.push_back(0);
  WalkStepper stepper(params, path.path_seed);
  for (std::uint64_t i = 0; i < params.steps; ++i) {
    path.states.push_back(stepper.step());
    path.jumps.push_back(stepper.last_jump());
  }
  return path;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        // Keep the error of the lowest index so reruns report the same one.
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Kernel identity

Interval folded_kernel_identity(const Rational& beta, std::int64_t M, long precision) {
  if (beta <= 1 || beta >= 2) throw DomainError("folded_kernel_identity needs 1 < beta < 2");
  if (M < 2) throw DomainError("folded_kernel_identity needs M >= 2");
  const long work = precision + 32;
  const Interval s = Interval::from_rational(beta, work);
  const Interval norm = Interval::from_long(2, work) * zeta(beta, work);
  const MeasureParams kernel{beta / 2, precision};
  Interval worst(work);
  for (std::int64_t m = 0; m <= M; ++m) {
    for (std::int64_t l = 0; l <= M; ++l) {
      // Jumps j != 0 with |m + j| = l.
      Interval folded(work);
      const std::int64_t up = l - m;
      const std::int64_t down = -l - m;
      if (up != 0) folded += inverse_power(static_cast<unsigned long>(std::abs(up)), s) / norm;
      if (down != up && down != 0) {
        folded += inverse_power(static_cast<unsigned long>(std::abs(down)), s) / norm;
      }
      const Interval defect = abs(folded - transition_prob(m, l, kernel));
      if (mpfr_greater_p(defect.hi(), worst.hi())) worst = defect;
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Transience

TransienceReport transience_stats(const WalkParams& params, std::uint64_t paths,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const std::vector<std::int64_t>& thresholds, unsigned threads) {
  if (params.kind != WalkKind::Dissipative) throw DomainError("transience_stats needs a dissipative walk");
  if (paths < 1) throw DomainError("transience_stats needs at least one path");
  for (std::uint64_t t : checkpoints) {
    if (t > params.steps) throw DomainError("checkpoint beyond the number of steps");
  }
  const std::size_t C = checkpoints.size();
  struct PathResult {
    std::vector<std::int64_t> at;
    std::vector<std::int64_t> suffix_min;
    std::uint64_t last_zero = 0;
    bool visited_zero = false;
  };
  std::vector<PathResult> results(paths);
  TransienceReport report{params, paths, {0.05, 0.25, 0.5, 0.75, 0.95}, thresholds, {}, {}};
  report.path_seeds.resize(paths);
  for (std::uint64_t p = 0; p < paths; ++p) report.path_seeds[p] = derive_seed(params.seed, p);

  parallel_for(paths, threads, [&](std::size_t p) {
    PathResult r{std::vector<std::int64_t>(C, 0), std::vector<std::int64_t>(C, kMaxWalkMagnitude), 0, false};
    WalkStepper w(params, report.path_seeds[p]);
    auto observe = [&](std::uint64_t time, std::int64_t x) {
      if (x == 0) {
        r.last_zero = time;
        r.visited_zero = true;
      }
      for (std::size_t c = 0; c < C; ++c) {
        if (time == checkpoints[c]) r.at[c] = x;
        if (time >= checkpoints[c]) r.suffix_min[c] = std::min(r.suffix_min[c], x);
      }
    };
    observe(0, 0);
    for (std::uint64_t t = 1; t <= params.steps; ++t) observe(t, w.step());
    results[p] = std::move(r);
  });

  for (std::size_t c = 0; c < C; ++c) {
    TransienceReport::Checkpoint cp;
    cp.t = checkpoints[c];
    std::vector<double> xs(paths);
    std::uint64_t zero = 0;
    std::vector<std::uint64_t> above(thresholds.size(), 0);
    for (std::uint64_t p = 0; p < paths; ++p) {
      const PathResult& r = results[p];
      xs[p] = static_cast<double>(r.at[c]);
      if (r.visited_zero && r.last_zero >= cp.t) ++zero;
      for (std::size_t h = 0; h < thresholds.size(); ++h) {
        if (r.suffix_min[c] >= thresholds[h]) ++above[h];
      }
    }
    for (double level : report.quantile_levels) cp.quantiles.push_back(quantile(xs, level));
    cp.zero_visit_fraction = static_cast<double>(zero) / static_cast<double>(paths);
    for (std::uint64_t a : above) cp.min_at_least.push_back(static_cast<double>(a) / static_cast<double>(paths));
    report.checkpoints.push_back(std::move(cp));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tails and envelopes

Interval jump_tail_prob(const Rational& beta, const BigInt& c, long precision) {
  const long work = precision + 32;
  if (c <= 1) return Interval::from_long(1, work);
  return zeta_tail(beta, c, work) / zeta(beta, work);
}

std::string summability_verdict(const Rational& beta, const Rational& gamma) {
  const Rational g = gamma * (beta - 1);
  if (g > 1) return "convergent";
  if (g == 1) return "divergent (harmonic comparison)";
  return "divergent";
}

TailProbability increment_tail_prob(const Rational& beta, const Rational& gamma, std::uint64_t n,
                                    long precision) {
  if (beta <= 1 || beta > 2) throw DomainError("increment_tail_prob needs 1 < beta <= 2");
  if (n < 1) throw DomainError("increment_tail_prob needs n >= 1");
  if (gamma < 0) throw DomainError("increment_tail_prob needs gamma >= 0");
  const long work = precision + 32;
  TailProbability t{ceil_power(n, gamma), Interval(work), Interval(work), Interval(work),
                    summability_verdict(beta, gamma)};
  t.prob = jump_tail_prob(beta, t.threshold, precision);
  if (t.threshold <= 1) {
    t.integral_lo = t.prob;
    t.integral_hi = t.prob;
  } else {
    const Interval z = zeta(beta, work);
    const auto b = integral_tail_bracket(Interval::from_rational(beta, work), t.threshold - 1, work);
    t.integral_lo = b.lo / z;
    t.integral_hi = b.hi / z;
  }
  return t;
}

std::vector<std::int64_t> envelope_thresholds(const Rational& gamma, std::uint64_t steps) {
  if (gamma < 0) throw DomainError("envelope exponent must be non-negative");
  std::vector<std::int64_t> out(steps, 0);
  const BigInt cap = BigInt(1) << 62;
  for (std::uint64_t n = 0; n < steps; ++n) {
    if (n == 0) {
      out[n] = gamma == 0 ? 1 : 0;
      continue;
    }
    const BigInt v = floor_power(n, gamma);
    out[n] = v >= cap ? kMaxWalkMagnitude : v.get_si();
  }
  return out;
}

std::uint64_t gamma_envelope_violations(const std::vector<std::int64_t>& states,
                                        const std::vector<std::int64_t>& thresholds, std::uint64_t n0) {
  std::uint64_t count = 0;
  for (std::uint64_t n = n0; n + 1 < states.size(); ++n) {
    if (n >= thresholds.size()) throw DomainError("envelope thresholds shorter than the path");
    if (std::abs(states[n + 1] - states[n]) > thresholds[n]) ++count;
  }
  return count;
}

std::uint64_t gamma_envelope_violations(const WalkPath& path, const Rational& gamma, std::uint64_t n0) {
  return gamma_envelope_violations(path.states, envelope_thresholds(gamma, path.params.steps), n0);
}

double quantile(std::vector<double> values, double level) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  if (level < 0 || level > 1) throw DomainError("quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1) * level;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

}  // namespace cantorlab
