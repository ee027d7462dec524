// cantorlab: command-line front end for the cylinder construction, the
// measures mu_alpha, the zeta-jump walks and the dimension experiments.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cantorlab/dimension.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/geometry.hpp"
#include "cantorlab/io.hpp"
#include "cantorlab/measure.hpp"
#include "cantorlab/verify.hpp"
#include "cantorlab/walks.hpp"

using nlohmann::json;
using namespace cantorlab;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kSeedRule = "path seed = splitmix64(splitmix64(seed) + path_id); generator mt19937_64";

struct Global {
  long precision = kDefaultPrecision;
  unsigned threads = 0;
  std::string out;
  bool allow_boundary = false;
  /// Set when --precision or CANTORLAB_PRECISION was given.
  bool precision_explicit = false;
};

long default_precision() {
  const char* env = std::getenv("CANTORLAB_PRECISION");
  if (!env || !*env) return kDefaultPrecision;
  char* end = nullptr;
  const long p = std::strtol(env, &end, 10);
  if (*end != '\0' || p < 16) throw DomainError(std::string("CANTORLAB_PRECISION must be an integer >= 16, got ") + env);
  return p;
}

json meta(const std::string& command, const json& config, const json& seeds = nullptr) {
  json m = {{"tool", "cantorlab"}, {"version", kVersion}, {"command", command}, {"config", config}};
  if (!seeds.is_null()) m["seeds"] = seeds;
  return m;
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + g.out);
  f << text;
  if (!f) throw DomainError("failed writing " + g.out);
}

std::string csv_header(const json& m) {
  return "# cantorlab " + std::string(kVersion) + "\n# meta: " + m.dump() + "\n";
}

AdmissibleWord parse_word(const std::string& text) {
  if (text.empty() || text == "root") return AdmissibleWord();
  return AdmissibleWord::parse(text);
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size()) throw DomainError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string fixed(double x) {
  // Shortest text that round-trips; identical on every run.
  return json(x).dump();
}

json quantiles_json(const std::vector<double>& xs) {
  json q = json::object();
  for (double level : {0.05, 0.25, 0.5, 0.75, 0.95}) q[json(level).dump()] = quantile(xs, level);
  return q;
}

void add_output_options(CLI::App* cmd, Global& g) {
  cmd->add_option("--out", g.out, "Write the output to this file instead of stdout");
}

// ---------------------------------------------------------------------------

void run_intervals(const Global& g, const std::string& word_text, long children_max) {
  const AdmissibleWord w = parse_word(word_text);
  json config = {{"word", w.to_string()}, {"precision", g.precision}, {"children", children_max}};
  json out = {{"meta", meta("intervals", config)}};
  if (w.is_root()) {
    out["interval"] = {{"word", json::array()},
                       {"left_poly", json::array()},
                       {"length", {{"num", "1"}, {"den", "1"}, {"depth", 0}}},
                       {"decimal_left", "0"},
                       {"decimal_length", "1"},
                       {"precision_bits", g.precision}};
  } else {
    out["interval"] = geometry_json(cylinder_interval(w), g.precision);
  }
  out["hole"] = hole_json(hole(w), g.precision);
  if (children_max > 0) {
    json kids = json::array();
    for (const auto& c : children(w, children_max)) kids.push_back(geometry_json(cylinder_interval(c), g.precision));
    out["children"] = kids;
  }
  emit(g, out.dump(2) + "\n");
}

void run_measure(const Global& g, const std::string& word_text, const std::string& alpha_text, long truncation) {
  const AdmissibleWord w = parse_word(word_text);
  const MeasureParams params{parse_rational(alpha_text), g.precision};
  params.validate(g.allow_boundary);
  const std::int64_t K = truncation > 0 ? truncation : std::max<std::int64_t>(w.last() + 2, 1000);
  json config = {{"word", w.to_string()}, {"alpha", to_string(params.alpha)}, {"precision", g.precision},
                 {"truncation", K}, {"allow_boundary", g.allow_boundary}};
  json out = {{"meta", meta("measure", config)}};
  out.update(mass_json(cylinder_mass(w, params), g.precision));
  out["consistency"] = consistency_json(consistency_defect(w, params, K));
  emit(g, out.dump(2) + "\n");
}

struct WalkOptions {
  std::string kind = "dissipative";
  std::string alpha = "3/4";
  std::string beta = "3/2";
  std::uint64_t steps = 10000;
  std::uint64_t paths = 100;
  std::uint64_t seed = 42;
  std::string checkpoints = "100,1000,10000";
  std::string format = "json";
  std::string gamma;
  std::uint64_t n0 = 100;
};

void run_walk(const Global& g, const WalkOptions& o) {
  WalkParams p;
  p.kind = parse_walk_kind(o.kind);
  p.alpha = parse_rational(o.alpha);
  p.beta = parse_rational(o.beta);
  p.steps = o.steps;
  p.seed = o.seed;
  p.validate(g.allow_boundary);
  if (o.paths < 1) throw DomainError("--paths must be at least 1");
  std::vector<std::uint64_t> checkpoints;
  for (std::uint64_t t : parse_list(o.checkpoints)) {
    if (t <= p.steps) checkpoints.push_back(t);
  }
  json config = {{"kind", to_string(p.kind)}, {"steps", p.steps}, {"paths", o.paths}, {"seed", p.seed},
                 {"format", o.format}, {"allow_boundary", g.allow_boundary}};
  if (p.kind == WalkKind::Dissipative) {
    config["alpha"] = to_string(p.alpha);
  } else {
    config["beta"] = to_string(p.beta);
  }
  config["checkpoints"] = checkpoints;
  if (!o.gamma.empty()) {
    config["gamma"] = o.gamma;
    config["n0"] = o.n0;
  }
  json seeds = {{"seed", p.seed}, {"rule", kSeedRule}};

  if (o.format == "csv") {
    std::string text = csv_header(meta("walk", config, seeds)) + "path_id,step,state\n";
    for (std::uint64_t i = 0; i < o.paths; ++i) {
      const WalkPath path = simulate(p, i);
      for (std::size_t t = 0; t < path.states.size(); ++t) {
        text += std::to_string(i) + "," + std::to_string(t) + "," + std::to_string(path.states[t]) + "\n";
      }
    }
    emit(g, text);
    return;
  }
  if (o.format != "json") throw DomainError("--format must be csv or json");

  std::vector<std::uint64_t> path_seeds(o.paths);
  for (std::uint64_t i = 0; i < o.paths; ++i) path_seeds[i] = derive_seed(p.seed, i);
  seeds["path_seeds"] = path_seeds;

  std::vector<double> finals(o.paths);
  std::vector<std::uint64_t> violations(o.paths, 0);
  std::vector<std::int64_t> thresholds;
  if (!o.gamma.empty()) thresholds = envelope_thresholds(parse_rational(o.gamma), p.steps);
  parallel_for(o.paths, g.threads, [&](std::size_t i) {
    const WalkPath path = simulate(p, i);
    finals[i] = static_cast<double>(path.states.back());
    if (!thresholds.empty()) violations[i] = gamma_envelope_violations(path.states, thresholds, o.n0);
  });
  json out = {{"meta", meta("walk", config, seeds)}, {"final_state_quantiles", quantiles_json(finals)}};
  if (!thresholds.empty()) {
    std::uint64_t total = 0;
    std::uint64_t clean = 0;
    for (auto v : violations) {
      total += v;
      clean += v == 0 ? 1 : 0;
    }
    out["envelope"] = {{"gamma", o.gamma}, {"n0", o.n0}, {"total_violations", total},
                       {"paths_without_violation", clean}, {"violations_per_path", violations}};
  }
  if (p.kind == WalkKind::Dissipative && !checkpoints.empty()) {
    const TransienceReport r = transience_stats(p, o.paths, checkpoints, {1, 10, 100, 1000}, g.threads);
    json cps = json::array();
    for (const auto& c : r.checkpoints) {
      json q = json::object();
      for (std::size_t i = 0; i < r.quantile_levels.size(); ++i) q[json(r.quantile_levels[i]).dump()] = c.quantiles[i];
      json m = json::object();
      for (std::size_t i = 0; i < r.thresholds.size(); ++i) m[std::to_string(r.thresholds[i])] = c.min_at_least[i];
      cps.push_back({{"t", c.t}, {"quantiles", q}, {"zero_visit_fraction", c.zero_visit_fraction},
                     {"min_at_least", m}});
    }
    out["transience"] = cps;
  }
  emit(g, out.dump(2) + "\n");
}

struct DimOptions {
  std::string alpha = "9/10";
  std::uint64_t depth = 10000;
  std::uint64_t paths = 100;
  std::uint64_t seed = 42;
  std::string gamma = "3";
  std::uint64_t n0 = 1000;
  std::string format = "csv";
  std::uint64_t every = 1;
};

void run_dim(const Global& g, const DimOptions& o) {
  WalkParams p;
  p.kind = WalkKind::Dissipative;
  p.alpha = parse_rational(o.alpha);
  p.steps = o.depth;
  p.seed = o.seed;
  p.validate(g.allow_boundary);
  if (o.paths < 1) throw DomainError("--paths must be at least 1");
  if (o.n0 < 1 || o.n0 >= o.depth) throw DomainError("--n0 must satisfy 1 <= n0 < depth");
  if (o.every < 1) throw DomainError("--every must be at least 1");
  const Rational gamma = parse_rational(o.gamma);
  // Double fast path unless a working precision was requested.
  const long dim_precision = g.precision_explicit ? g.precision : 53;
  json config = {{"alpha", to_string(p.alpha)}, {"depth", o.depth}, {"paths", o.paths}, {"seed", o.seed},
                 {"gamma", to_string(gamma)}, {"n0", o.n0}, {"format", o.format}, {"every", o.every},
                 {"precision", dim_precision}};
  json seeds = {{"seed", p.seed}, {"rule", kSeedRule}};

  std::vector<DimSeries> series(o.paths);
  std::vector<std::uint64_t> violations(o.paths);
  const std::vector<std::int64_t> thresholds = envelope_thresholds(gamma, o.depth);
  parallel_for(o.paths, g.threads, [&](std::size_t i) {
    const WalkPath path = simulate(p, i);
    violations[i] = gamma_envelope_violations(path.states, thresholds, o.n0);
    series[i] = dim_series(path, p.alpha, dim_precision);
  });

  if (o.format == "csv") {
    std::string text = csv_header(meta("dim", config, seeds)) + "path_id,n,ratio,furstenberg_ratio\n";
    for (const DimSeries& s : series) {
      for (const DimRecord& r : s.records) {
        if (r.n % o.every != 0 && r.n != s.depth()) continue;
        text += std::to_string(s.path_id) + "," + std::to_string(r.n) + "," + fixed(r.ratio) + "," +
                (r.n < s.depth() ? fixed(r.furstenberg_ratio) : std::string()) + "\n";
      }
    }
    emit(g, text);
    return;
  }
  if (o.format != "json") throw DomainError("--format must be csv or json");

  std::vector<double> final_ratio, n0_ratio, tail_inf, furst;
  std::uint64_t clean = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const DimSeries& s = series[i];
    final_ratio.push_back(s.at(o.depth).ratio);
    n0_ratio.push_back(s.at(o.n0).ratio);
    tail_inf.push_back(tail_infimum(s, o.n0).front());
    furst.push_back(furstenberg_ratio_check(s, o.n0));
    clean += violations[i] == 0 ? 1 : 0;
  }
  std::vector<std::uint64_t> path_seeds(o.paths);
  for (std::uint64_t i = 0; i < o.paths; ++i) path_seeds[i] = derive_seed(p.seed, i);
  seeds["path_seeds"] = path_seeds;
  json out = {{"meta", meta("dim", config, seeds)},
              {"ratio_at_depth", quantiles_json(final_ratio)},
              {"ratio_at_n0", quantiles_json(n0_ratio)},
              {"tail_infimum_from_n0", quantiles_json(tail_inf)},
              {"furstenberg_max_deviation", quantiles_json(furst)},
              {"paths_inside_envelope", clean}};
  emit(g, out.dump(2) + "\n");
}

void run_pressure(const Global& g, std::int64_t cutoff, double tol) {
  const PressureEstimate e = pressure_dimension(cutoff, tol);
  json trace = json::array();
  for (const auto& l : e.lambda_trace) {
    trace.push_back({{"s", l.s}, {"lambda", l.lambda}, {"lambda_lo", l.lambda_lo}, {"lambda_hi", l.lambda_hi},
                     {"iterations", l.iterations}});
  }
  json out = {{"meta", meta("pressure", {{"cutoff", cutoff}, {"tol", tol}})},
              {"K", cutoff},
              {"s_star", e.s_star},
              {"s_lo", e.s_lo},
              {"s_hi", e.s_hi},
              {"lambda_trace", trace}};
  emit(g, out.dump(2) + "\n");
}

void run_lebesgue(const Global& g, std::uint64_t depth, std::int64_t cutoff, const std::string& format) {
  const LebesgueDecay d = lebesgue_mass_decay(depth, cutoff);
  const json m = meta("lebesgue", {{"depth", depth}, {"cutoff", cutoff}, {"format", format}});
  if (format == "csv") {
    std::string text = csv_header(m) + "n,lower,upper\n";
    for (const auto& l : d.levels) text += std::to_string(l.n) + "," + fixed(l.lower) + "," + fixed(l.upper) + "\n";
    emit(g, text);
    return;
  }
  if (format != "json") throw DomainError("--format must be csv or json");
  json levels = json::array();
  for (const auto& l : d.levels) levels.push_back({{"n", l.n}, {"lower", l.lower}, {"upper", l.upper}});
  emit(g, json{{"meta", m}, {"levels", levels}, {"mean_rate", d.mean_rate}}.dump(2) + "\n");
}

int run_verify(const Global& g, bool quick, std::uint64_t seed, const std::string& format, bool timing) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.threads = g.threads;
  opt.precision = g.precision;
  if (format != "text" && format != "json") throw DomainError("--format must be text or json");
  std::string text;
  auto line = [&](const CriterionResult& r) {
    std::string s = std::string(r.passed ? "PASS" : "FAIL") + " " + r.id + " " + r.title + ": " + r.summary;
    if (timing) s += " [" + fixed(r.seconds) + " s]";
    return s + "\n";
  };
  std::vector<CriterionResult> results;
  if (quick) {
    results = run_quick_checks(opt);
    for (const auto& r : results) text += line(r);
  } else {
    results = run_acceptance(opt, [&](const CriterionResult& r) {
      if (format == "text" && g.out.empty()) std::cout << line(r) << std::flush;
    });
    for (const auto& r : results) text += line(r);
  }
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (format == "json") {
    json rs = json::array();
    for (const auto& r : results) {
      json j = {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"summary", r.summary}, {"details", r.details}};
      if (timing) j["seconds"] = r.seconds;
      rs.push_back(j);
    }
    json out = {{"meta", meta("verify", {{"quick", quick}, {"precision", g.precision}},
                                {{"seed", seed}, {"rule", kSeedRule}})},
                {"results", rs},
                {"passed", all}};
    emit(g, out.dump(2) + "\n");
  } else if (quick || !g.out.empty()) {
    emit(g, text);
  }
  return all ? 0 : 1;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", message}, {"kind", kind}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cantorlab: cylinder sets, measures, zeta-jump walks and dimension experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Global g;
  try {
    g.precision = default_precision();
    const char* env = std::getenv("CANTORLAB_PRECISION");
    g.precision_explicit = env && *env;
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 2;
  }
  app.add_option("--precision", g.precision, "Working precision in bits (env CANTORLAB_PRECISION)")
      ->check(CLI::Range(16L, 1L << 20));
  app.add_option("--threads", g.threads, "Maximum worker threads (0 = all cores)");
  app.add_flag("--allow-boundary", g.allow_boundary, "Admit boundary parameters (alpha = 1, beta = 2, alpha > 1 for measure)");
  app.fallthrough();

  std::string word = "1";
  long children_max = 0;
  auto* intervals = app.add_subcommand("intervals", "Exact geometry of a cylinder and its hole");
  intervals->add_option("--word", word, "Comma-separated symbols, e.g. 1,0,2 (\"root\" for [0,1))");
  intervals->add_option("--children", children_max, "Also list children with symbol <= this");
  add_output_options(intervals, g);

  std::string alpha = "3/4";
  long truncation = 0;
  auto* measure = app.add_subcommand("measure", "Cylinder mass and consistency bracket");
  measure->add_option("--word", word, "Comma-separated symbols");
  measure->add_option("--alpha", alpha, "Rational alpha, e.g. 3/4");
  measure->add_option("--truncation", truncation, "Child truncation K (default max(last+2, 1000))");
  add_output_options(measure, g);

  WalkOptions wo;
  auto* walk = app.add_subcommand("walk", "Simulate zeta-jump walks");
  walk->add_option("--kind", wo.kind, "cauchy_Z | folded | dissipative");
  walk->add_option("--alpha", wo.alpha, "alpha for the dissipative walk");
  walk->add_option("--beta", wo.beta, "beta for cauchy_Z and folded");
  walk->add_option("--steps", wo.steps, "Steps per path");
  walk->add_option("--paths", wo.paths, "Number of paths");
  walk->add_option("--seed", wo.seed, "Base seed");
  walk->add_option("--checkpoints", wo.checkpoints, "Comma-separated checkpoint times");
  walk->add_option("--format", wo.format, "csv (states) or json (summary)");
  walk->add_option("--gamma", wo.gamma, "Count envelope violations |k_{n+1}-k_n| > n^gamma");
  walk->add_option("--n0", wo.n0, "First index for envelope violations");
  add_output_options(walk, g);

  DimOptions dopt;
  auto* dim = app.add_subcommand("dim", "Pointwise-dimension series along random paths");
  dim->add_option("--alpha", dopt.alpha, "Rational alpha");
  dim->add_option("--depth", dopt.depth, "Depth of each path");
  dim->add_option("--paths", dopt.paths, "Number of paths");
  dim->add_option("--seed", dopt.seed, "Base seed");
  dim->add_option("--gamma", dopt.gamma, "Envelope exponent for the path filter");
  dim->add_option("--n0", dopt.n0, "Start of the tail statistics");
  dim->add_option("--format", dopt.format, "csv (per depth) or json (quantile summary)");
  dim->add_option("--every", dopt.every, "Write every k-th depth to the CSV");
  add_output_options(dim, g);

  std::int64_t cutoff = 100;
  double tol = 1e-6;
  auto* pressure = app.add_subcommand("pressure", "Root of the truncated pressure equation");
  pressure->add_option("--cutoff", cutoff, "State cutoff K");
  pressure->add_option("--tol", tol, "Bisection tolerance on s");
  add_output_options(pressure, g);

  std::uint64_t leb_depth = 50;
  std::int64_t leb_cutoff = 1000;
  std::string leb_format = "csv";
  auto* lebesgue = app.add_subcommand("lebesgue", "Lebesgue mass of the construction per level");
  lebesgue->add_option("--depth", leb_depth, "Number of levels");
  lebesgue->add_option("--cutoff", leb_cutoff, "State cutoff K");
  lebesgue->add_option("--format", leb_format, "csv or json");
  add_output_options(lebesgue, g);

  bool quick = false;
  bool timing = false;
  std::uint64_t verify_seed = kVerifySeed;
  std::string verify_format = "text";
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_flag("--quick", quick, "Structural checks only");
  verify->add_option("--seed", verify_seed, "Base seed of the suite");
  verify->add_option("--format", verify_format, "text or json");
  verify->add_flag("--timing", timing, "Include run times (makes output run-dependent)");
  add_output_options(verify, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage", e.what());
    return 2;
  }

  if (app.get_option("--precision")->count() > 0) g.precision_explicit = true;
  try {
    if (*intervals) run_intervals(g, word, children_max);
    if (*measure) run_measure(g, word, alpha, truncation);
    if (*walk) run_walk(g, wo);
    if (*dim) run_dim(g, dopt);
    if (*pressure) run_pressure(g, cutoff, tol);
    if (*lebesgue) run_lebesgue(g, leb_depth, leb_cutoff, leb_format);
    if (*verify) return run_verify(g, quick, verify_seed, verify_format, timing);
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 3;
  }
  return 0;
}
