#include "verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "gammareg/analysis.hpp"
#include "gammareg/conjugate.hpp"
#include "gammareg/construct.hpp"
#include "gammareg/envelope.hpp"
#include "gammareg/hull3d.hpp"
#include "verify/oracles.hpp"

namespace gammareg::verify {

namespace {

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<double> geometric_ts(double t_max, double t_min, std::size_t count) {
  std::vector<double> ts(count);
  for (std::size_t k = 0; k < count; ++k) {
    ts[k] = t_max * std::pow(t_min / t_max, static_cast<double>(k) / static_cast<double>(count - 1));
  }
  ts.back() = t_min;
  return ts;
}

// Curves over t in [1e-4, 1e-2] shared by the headline and o(t) criteria.
struct PowerRun {
  double alpha;
  RatioCurve curve;
};

const std::vector<PowerRun>& power_runs(unsigned threads) {
  static std::mutex mu;
  static std::vector<PowerRun> runs;
  std::lock_guard lock(mu);
  if (runs.empty()) {
    const std::vector<double> ts = geometric_ts(1e-2, 1e-4, 9);
    // phi(1e-4) = 1e-8 for alpha = 2 needs the steeper grading to resolve.
    const std::vector<std::pair<double, double>> setups = {{1.0, 2.0}, {2.0, 4.0}};
    for (const auto& [alpha, p] : setups) {
      CurveOptions opts;
      opts.grid = {20001, p, 32};
      opts.threads = threads;
      runs.push_back({alpha, sharpness_curve(PhiSpec::power(alpha), ts, opts)});
    }
  }
  return runs;
}

Outcome conjugate_oracle(unsigned) {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 2, 2001);
    const std::size_t m = oracle::uniform_count(rng, 2, 2001);
    const SampledFn1D f = oracle::random_function(rng, n);
    const double range = oracle::uniform(rng, 1.0, 4.0 * static_cast<double>(n));
    const SlopeGrid s(Grid1D(oracle::random_slopes(rng, m, range)));
    const SampledFn1D fast = lf_conjugate(f, s);
    const SampledFn1D slow = lf_conjugate_bruteforce(f, s);
    for (std::size_t j = 0; j < m; ++j) {
      const double dev = std::abs(fast[j] - slow[j]) / std::max(1.0, std::abs(slow[j]));
      worst = std::max(worst, dev);
    }
    largest = std::max(largest, n * m);
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = "max rel dev " + fmt(worst) + " over 100 functions";
  o.metrics = {{"max_relative_deviation", worst}, {"largest_nm", largest}};
  return o;
}

Outcome envelope_biconjugate(unsigned) {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 2, 2001);
    const SampledFn1D f = oracle::random_function(rng, n);
    const EnvelopeResult1D env = envelope_1d(f);
    const SampledFn1D bi = biconjugate(f);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(env.envelope[i] - bi[i]));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = "max |env - f**| " + fmt(worst) + " over 50 functions";
  o.metrics = {{"max_abs_deviation", worst}};
  return o;
}

SampledFn1D lattice_function(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(i);
    ys[i] = static_cast<double>(oracle::uniform_count(rng, 0, 6)) - 3.0;
  }
  return SampledFn1D(Grid1D(std::move(xs)), std::move(ys));
}

Outcome hull_oracle(unsigned) {
  std::mt19937_64 rng(303);
  std::size_t instances = 0, nodes = 0, bitwise = 0;
  double worst1d = 0.0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 2, 12);
    // Lattice data produces ties and collinear runs; jittered data is generic.
    const SampledFn1D f = trial % 2 == 0 ? lattice_function(rng, n)
                                         : oracle::random_function(rng, n);
    const EnvelopeResult1D env = envelope_1d(f);
    const std::vector<double> ref = oracle::chord_envelope(f);
    double scale = 0.0;
    for (double v : f.values()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::abs(env.envelope[i] - ref[i]);
      worst1d = std::max(worst1d, d / (1.0 + scale));
      bitwise += d == 0.0 ? 1 : 0;
      ++nodes;
    }
    ++instances;
  }

  std::size_t clouds = 0, unsupported = 0, missing = 0, extra = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 3, 10);
    std::vector<Point3> pts(n);
    for (auto& p : pts) {
      p = {oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1)};
    }
    const double eps = hull_epsilon(pts);
    const std::vector<Facet> facets = lower_hull_3d(pts);
    const std::vector<oracle::Plane> planes = oracle::supporting_lower_planes(pts, eps);
    auto same_plane = [](const std::array<double, 3>& n1, double o1,
                         const std::array<double, 3>& n2, double o2) {
      return std::abs(n1[0] - n2[0]) <= 1e-9 && std::abs(n1[1] - n2[1]) <= 1e-9 &&
             std::abs(n1[2] - n2[2]) <= 1e-9 && std::abs(o1 - o2) <= 1e-9;
    };
    for (const Facet& fa : facets) {
      for (const Point3& p : pts) {
        if (fa.normal[0] * p.x + fa.normal[1] * p.y + fa.normal[2] * p.z > fa.offset + eps) {
          ++unsupported;
          break;
        }
      }
      const bool known = std::any_of(planes.begin(), planes.end(), [&](const oracle::Plane& pl) {
        return same_plane(fa.normal, fa.offset, pl.normal, pl.offset);
      });
      extra += known ? 0 : 1;
    }
    for (const oracle::Plane& pl : planes) {
      const bool found = std::any_of(facets.begin(), facets.end(), [&](const Facet& fa) {
        return same_plane(fa.normal, fa.offset, pl.normal, pl.offset);
      });
      missing += found ? 0 : 1;
    }
    ++clouds;
  }

  Outcome o;
  o.pass = worst1d <= 1e-14 && unsupported == 0 && missing == 0 && extra == 0;
  std::ostringstream d;
  d << instances << " 1D instances (" << bitwise << "/" << nodes << " nodes bitwise equal, max dev "
    << fmt(worst1d) << "), " << clouds << " clouds: " << unsupported << " unsupported, "
    << missing << " missing planes";
  o.detail = d.str();
  o.metrics = {{"instances_1d", instances},   {"nodes", nodes},
               {"bitwise_equal", bitwise},     {"max_scaled_deviation", worst1d},
               {"clouds", clouds},             {"unsupported_facets", unsupported},
               {"missing_planes", missing},    {"facets_not_supporting_planes", extra}};
  return o;
}

Outcome closed_form_gap(unsigned threads) {
  const std::vector<double> ts = {1e-2, 1e-3, 1e-4};
  CurveOptions opts;
  opts.grid = {20001, 2.0, 32};
  opts.threads = threads;
  const RatioCurve curve = sharpness_curve(PhiSpec::power(1.0), ts, opts);
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const RatioSample& s : curve.samples) {
    const double expected = oracle::power_gap(1.0, s.t);
    const double rel = std::abs(s.gap0 - expected) / expected;
    worst = std::max(worst, rel);
    rows.push_back({{"t", s.t}, {"gap0", s.gap0}, {"closed_form", expected}, {"rel_err", rel}});
  }
  Outcome o;
  o.pass = worst <= 0.01;
  o.detail = "max rel err " + fmt(worst) + " (t=1e-3: gap " + fmt(curve.samples[1].gap0, 6) + ")";
  o.metrics = {{"samples", rows}, {"max_relative_error", worst}};
  return o;
}

Outcome headline(unsigned threads) {
  Outcome o;
  o.pass = true;
  std::ostringstream d;
  nlohmann::json per = nlohmann::json::array();
  for (const PowerRun& r : power_runs(threads)) {
    const double liminf = liminf_estimate(r.curve);
    double min_bound = 1.0, worst_margin = INFINITY;
    bool ratio_ok = true;
    for (const RatioSample& s : r.curve.samples) {
      min_bound = std::min(min_bound, s.bound);
      worst_margin = std::min(worst_margin, s.ratio - s.bound);
      ratio_ok = ratio_ok && s.ratio >= s.bound - 0.02 * std::abs(s.bound);
    }
    const bool ok = liminf >= 0.9 && ratio_ok && min_bound >= 0.99;
    o.pass = o.pass && ok;
    d << "alpha=" << r.alpha << " liminf " << fmt(liminf) << " min bound " << fmt(min_bound, 6)
      << (ok ? "; " : " FAIL; ");
    per.push_back({{"alpha", r.alpha}, {"liminf", liminf}, {"min_bound", min_bound},
                   {"min_ratio_minus_bound", worst_margin}, {"pass", ok}});
  }
  o.detail = d.str();
  o.metrics = {{"runs", per}};
  return o;
}

Outcome oeps(unsigned threads) {
  const std::map<double, double> target = {{1.0, 1.0 / 3.0}, {2.0, 0.25}};
  Outcome o;
  o.pass = true;
  std::ostringstream d;
  nlohmann::json per = nlohmann::json::array();
  for (const PowerRun& r : power_runs(threads)) {
    const OepsReport rep = oeps_check(r.curve);
    const double want = target.at(r.alpha);
    const double closed = r.alpha / (2.0 * r.alpha + 1.0);
    const bool ok = rep.decreasing && std::abs(rep.exponent - want) <= 0.05;
    o.pass = o.pass && ok;
    d << "alpha=" << r.alpha << " exponent " << fmt(rep.exponent) << " (target " << fmt(want)
      << ", closed form " << fmt(closed) << ")" << (ok ? "; " : " FAIL; ");
    per.push_back({{"alpha", r.alpha}, {"exponent", rep.exponent}, {"target", want},
                   {"closed_form_exponent", closed}, {"decreasing", rep.decreasing},
                   {"final_value", rep.final_value}, {"pass", ok}});
  }
  o.detail = d.str();
  o.metrics = {{"runs", per}};
  return o;
}

Outcome cross_section(unsigned) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1.0), make_kit_grid(20001, 2.0));
  const CrossSectionReport r = cross_section_check(kit, make_disk_grid(161), 0.05, 0.02);
  Outcome o;
  o.pass = r.pass && r.row_bound_holds && r.gap_bound_holds;
  o.detail = "gap2d " + fmt(r.gap2d, 8) + " vs gap1d " + fmt(r.gap1d, 8) + ", max row excess " +
             fmt(r.max_row_excess);
  o.metrics = {{"gap2d", r.gap2d},
               {"gap1d", r.gap1d},
               {"max_row_excess", r.max_row_excess},
               {"row_nodes_in_flat", r.row_nodes_in_flat}};
  return o;
}

Outcome convex_region(unsigned) {
  const Grid2D grid = make_disk_grid(161);
  const ConvexRegionReport wide = convex_region_report(grid, 10000, 20240917, 1e-2);
  const ConvexRegionReport narrow = convex_region_report(grid, 10000, 20240917, 5e-3);
  const auto sigma = [](const ConvexRegionReport& r) {
    return std::sqrt(r.band_fraction * (1.0 - r.band_fraction) / static_cast<double>(r.samples));
  };
  const double s1 = sigma(wide), s2 = sigma(narrow);
  const double diff = std::abs(narrow.band_fraction - wide.band_fraction / 2.0);
  const double allowed = 3.0 * std::sqrt(s2 * s2 + s1 * s1 / 4.0);
  const std::size_t failures = wide.midpoint_failures + wide.grid_failures +
                               narrow.midpoint_failures + narrow.grid_failures;
  Outcome o;
  o.pass = failures == 0 && diff <= allowed && wide.pass && narrow.pass;
  o.detail = "failures " + std::to_string(failures) + ", band fractions " +
             fmt(wide.band_fraction) + " / " + fmt(narrow.band_fraction) + ", |f2 - f1/2| " +
             fmt(diff) + " <= " + fmt(allowed);
  o.metrics = {{"midpoint_failures", failures},
               {"band_fraction_1e-2", wide.band_fraction},
               {"band_fraction_5e-3", narrow.band_fraction},
               {"linearity_deviation", diff},
               {"allowed", allowed},
               {"straddle_failures", wide.straddle_failures}};
  return o;
}

Outcome resolution_refusal(unsigned) {
  std::ostringstream out, err;
  const int code = cli::run({"counterexample", "--phi", "power:1", "--n1d", "201", "--t-min",
                             "1e-6", "--out", "-"},
                            out, err);
  const std::string msg = err.str();
  const bool suggests = msg.find("minimal n: ") != std::string::npos;
  Outcome o;
  o.pass = code == cli::kResolutionRefused && suggests;
  std::string line = msg.substr(0, msg.find('\n'));
  const auto at = msg.find("minimal n: ");
  if (at != std::string::npos) line += "; " + msg.substr(at, msg.find('\n', at) - at);
  o.detail = "exit " + std::to_string(code) + ": " + line;
  o.metrics = {{"exit_code", code}, {"message", msg}};
  return o;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all = {
      {1, "conjugate-oracle", "fast conjugate matches brute force", {"conjugate"}, 5.0,
       conjugate_oracle},
      {2, "envelope-biconjugate", "envelope equals biconjugate", {"envelope", "conjugate"}, 5.0,
       envelope_biconjugate},
      {3, "hull-oracle", "hulls match chord and plane enumeration", {"envelope", "hull"}, 10.0,
       hull_oracle},
      {4, "closed-form-gap", "origin gap matches closed form (alpha=1)", {"counterexample"}, 10.0,
       closed_form_gap},
      {5, "sharpness", "gap ratio bounded below (alpha=1,2)", {"counterexample", "sharpness"},
       20.0, headline},
      {6, "oeps", "supdist/t decays with expected exponent", {"counterexample", "oeps"}, 20.0,
       oeps},
      {7, "cross-section", "2D envelope row below 1D envelope", {"envelope", "2d", "counterexample"},
       60.0, cross_section},
      {8, "convex-region", "h convex off a null set", {"region"}, 5.0, convex_region},
      {9, "resolution-refusal", "under-resolved run refused", {"cli", "resolution"}, 2.0,
       resolution_refusal},
  };
  return all;
}

std::vector<const Criterion*> select(const std::vector<Criterion>& all,
                                     const std::vector<std::string>& only) {
  std::vector<const Criterion*> out;
  for (const Criterion& c : all) {
    const bool keep = only.empty() || std::any_of(only.begin(), only.end(), [&](const std::string& k) {
                        return k == std::to_string(c.id) || k == c.key ||
                               std::find(c.tags.begin(), c.tags.end(), k) != c.tags.end();
                      });
    if (keep) out.push_back(&c);
  }
  return out;
}

std::vector<CriterionResult> run(const std::vector<const Criterion*>& selected,
                                 unsigned threads) {
  std::vector<CriterionResult> results;
  for (const Criterion* c : selected) {
    CriterionResult r;
    r.id = c->id;
    r.key = c->key;
    r.name = c->name;
    r.budget_seconds = c->budget_seconds;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c->body(threads);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.within_budget = r.seconds <= r.budget_seconds;
    r.pass = o.pass && r.within_budget;
    r.detail = o.detail;
    r.metrics = o.metrics;
    results.push_back(std::move(r));
  }
  return results;
}

void print_table(std::ostream& out, const std::vector<CriterionResult>& results) {
  std::size_t passed = 0;
  for (const CriterionResult& r : results) {
    char head[160];
    std::snprintf(head, sizeof head, "[%d] %-20s %-4s %7.2fs / %3.0fs%s  ", r.id, r.key.c_str(),
                  r.pass ? "PASS" : "FAIL", r.seconds, r.budget_seconds,
                  r.within_budget ? "" : " (over budget)");
    out << head << r.detail << '\n';
    passed += r.pass ? 1 : 0;
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CriterionResult& r : results) {
    arr.push_back({{"id", r.id},
                   {"key", r.key},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"budget_seconds", r.budget_seconds},
                   {"within_budget", r.within_budget},
                   {"detail", r.detail},
                   {"metrics", r.metrics}});
  }
  return arr;
}

}  // namespace gammareg::verify
