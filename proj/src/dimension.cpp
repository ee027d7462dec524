#include "cantorlab/dimension.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "cantorlab/error.hpp"
#include "cantorlab/geometry.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/measure.hpp"
#include "cantorlab/zeta.hpp"

namespace cantorlab {

namespace {

void fill_furstenberg(DimSeries& series) {
  auto& r = series.records;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) r[i].furstenberg_ratio = r[i + 1].log_len / r[i].log_len;
}

}  // namespace

DimSeries dim_series(std::span<const Symbol> symbols, const Rational& alpha, long precision) {
  MeasureParams{alpha, std::max(precision, 16L)}.validate(true);
  if (!is_admissible(symbols)) throw DomainError("dim_series needs an admissible word");
  DimSeries series{alpha, 0, {}};
  series.records.reserve(symbols.size());

  if (precision <= 64) {
    const double log_q = log(Interval::q(128)).mid_double();
    const double log_norm = log(Interval::from_long(2, 128) * zeta(2 * alpha, 128)).mid_double();
    const double e = to_double(2 * alpha);
    double log_len = 0;
    double log_mass = 0;
    Symbol prev = 0;
    std::uint64_t n = 0;
    for (Symbol k : symbols) {
      const auto d = static_cast<double>(step_denominator(prev, k));
      log_len += log_q - 2 * std::log(d);
      log_mass += StepFactor::of(prev, k).log_value(e) - log_norm;
      ++n;
      series.records.push_back({n, log_len, log_mass, log_mass / log_len, 0});
      prev = k;
    }
  } else {
    const long work = precision + 32;
    const Interval log_q = log(Interval::q(work));
    const Interval log_norm = log(Interval::from_long(2, work) * zeta(2 * alpha, work));
    const Interval e = Interval::from_rational(2 * alpha, work);
    const Interval two = Interval::from_long(2, work);
    Interval log_len(work);
    Interval log_mass(work);
    Symbol prev = 0;
    std::uint64_t n = 0;
    for (Symbol k : symbols) {
      log_len += log_q - two * log(Interval::from_ulong(step_denominator(prev, k), work));
      log_mass += log(StepFactor::of(prev, k).evaluate(e)) - log_norm;
      ++n;
      const double ll = log_len.mid_double();
      const double lm = log_mass.mid_double();
      series.records.push_back({n, ll, lm, (log_mass / log_len).mid_double(), 0});
      prev = k;
    }
  }
  fill_furstenberg(series);
  return series;
}

DimSeries dim_series(const WalkPath& path, const Rational& alpha, long precision) {
  if (path.params.kind != WalkKind::Dissipative) throw DomainError("dim_series needs a dissipative path");
  DimSeries s = dim_series(std::span<const Symbol>(path.states).subspan(1), alpha, precision);
  s.path_id = path.path_id;
  return s;
}

double furstenberg_ratio_check(const DimSeries& series, std::uint64_t n0) {
  if (n0 < 1 || series.depth() < n0 + 1) throw DomainError("series too short for furstenberg_ratio_check");
  double worst = 0;
  for (std::uint64_t n = n0; n < series.depth(); ++n) {
    worst = std::max(worst, std::abs(series.at(n).furstenberg_ratio - 1));
  }
  return worst;
}

std::vector<double> running_infimum(const DimSeries& series, std::uint64_t n0) {
  if (n0 < 1 || series.depth() < n0) throw DomainError("series too short for running_infimum");
  std::vector<double> out;
  out.reserve(series.depth() - n0 + 1);
  double m = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = n0; n <= series.depth(); ++n) {
    m = std::min(m, series.at(n).ratio);
    out.push_back(m);
  }
  return out;
}

std::vector<double> tail_infimum(const DimSeries& series, std::uint64_t n0) {
  if (n0 < 1 || series.depth() < n0) throw DomainError("series too short for tail_infimum");
  std::vector<double> out(series.depth() - n0 + 1);
  double m = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = series.depth(); n >= n0; --n) {
    m = std::min(m, series.at(n).ratio);
    out[n - n0] = m;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pressure

namespace {

Eigen::MatrixXd log_weights(std::int64_t K) {
  const double log_q = log(Interval::q(128)).mid_double();
  const double inf = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(K + 1, K + 1, inf);
  for (std::int64_t k = 0; k <= K; ++k) {
    for (std::int64_t l = 0; l <= K; ++l) {
      if (!is_legal_transition(k, l)) continue;
      w(k, l) = log_q - 2 * std::log(static_cast<double>(step_denominator(k, l)));
    }
  }
  return w;
}

}  // namespace

LambdaSample transfer_radius(std::int64_t cutoff, double s, double rel_tol, std::uint64_t max_iterations) {
  if (cutoff < 1) throw DomainError("transfer_radius needs K >= 1");
  // Illegal entries hold -inf; 0 * -inf would be NaN at s = 0.
  const Eigen::MatrixXd logw = log_weights(cutoff);
  const Eigen::MatrixXd T = logw.unaryExpr([s](double x) { return std::isinf(x) ? 0.0 : std::exp(s * x); });
  Eigen::VectorXd v = Eigen::VectorXd::Ones(cutoff + 1);
  LambdaSample out{s, 0, 0, 0, 0};
  double prev = 0;
  for (std::uint64_t it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd w = T * v;
    const Eigen::ArrayXd ratios = w.array() / v.array();
    out.lambda = w.sum() / v.sum();
    out.lambda_lo = ratios.minCoeff();
    out.lambda_hi = ratios.maxCoeff();
    out.iterations = it;
    v = w / w.sum();
    if (it > 1 && std::abs(out.lambda - prev) <= rel_tol * out.lambda) return out;
    prev = out.lambda;
  }
  throw SolverError("power iteration did not converge at s = " + std::to_string(s));
}

PressureEstimate pressure_dimension(std::int64_t cutoff, double tolerance) {
  if (cutoff < 1) throw DomainError("pressure_dimension needs K >= 1");
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  PressureEstimate est{cutoff, tolerance, 0, 1, 0, {}};
  auto above_one = [&](double s) {
    const LambdaSample l = transfer_radius(cutoff, s);
    est.lambda_trace.push_back(l);
    if (l.lambda_lo > 1) return true;
    if (l.lambda_hi < 1) return false;
    return l.lambda > 1;
  };
  if (!above_one(0.0)) throw SolverError("lambda(0) <= 1: no root in [0, 1]");
  if (above_one(1.0)) throw SolverError("lambda(1) >= 1: no root in [0, 1]");
  while (est.s_hi - est.s_lo > tolerance) {
    const double mid = 0.5 * (est.s_lo + est.s_hi);
    (above_one(mid) ? est.s_lo : est.s_hi) = mid;
  }
  est.s_star = 0.5 * (est.s_lo + est.s_hi);
  return est;
}

// ---------------------------------------------------------------------------
// Lebesgue mass

double retained_fraction(std::int64_t k) {
  if (k < 0) throw DomainError("negative state");
  if (k == 0) return 0.5;
  const Rational covered = harmonic2(static_cast<unsigned long>(k)) + Rational(1, 4 * k * k);
  return (Interval::from_rational(Rational(1, 2), 128) + Interval::q(128) * Interval::from_rational(covered, 128))
      .mid_double();
}

LebesgueDecay lebesgue_mass_decay(std::uint64_t depth, std::int64_t cutoff) {
  if (depth < 1) throw DomainError("lebesgue_mass_decay needs N >= 1");
  if (cutoff < 2) throw DomainError("lebesgue_mass_decay needs K >= 2");
  const std::int64_t K = cutoff;
  const Eigen::MatrixXd W = log_weights(K).array().exp().matrix();

  // Upper bounds of q sum_{j > J} 1/j^2 for J = 0..K: the part of a parent
  // with last symbol k that the truncation drops is q tail(K - k).
  std::vector<double> dropped(K + 1);
  {
    const long p = 128;
    const Interval q = Interval::q(p);
    Interval tail = zeta(Rational(2), p);
    for (std::int64_t J = 0; J <= K; ++J) {
      if (J > 0) {
        const Interval jj = Interval::from_long(J, p);
        tail -= Interval::from_long(1, p) / (jj * jj);
      }
      dropped[J] = (q * tail).hi_double();
    }
  }

  LebesgueDecay out{depth, cutoff, {}, 0};
  Eigen::VectorXd v = Eigen::VectorXd::Zero(K + 1);
  v(0) = 1.0;
  double escaped = 0;
  for (std::uint64_t n = 1; n <= depth; ++n) {
    for (std::int64_t k = 0; k <= K; ++k) escaped += v(k) * dropped[K - k];
    v = W.transpose() * v;
    const double lower = v.sum();
    out.levels.push_back({n, lower, lower + escaped});
  }
  const double first = 1.0;  // level 0: the root
  out.mean_rate = std::pow(out.levels.back().upper / first, 1.0 / static_cast<double>(depth));
  return out;
}

}  // namespace cantorlab
