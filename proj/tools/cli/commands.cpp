#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/report_json.hpp"
#include "cli/svg.hpp"
#include "gammareg/analysis.hpp"
#include "gammareg/conjugate.hpp"
#include "gammareg/construct.hpp"
#include "gammareg/csv.hpp"
#include "gammareg/envelope.hpp"
#include "gammareg/errors.hpp"
#include "verify/acceptance.hpp"

namespace gammareg::cli {

namespace {

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + path + "'");
  file << text;
}

std::ifstream open_input(const std::string& path) {
  if (path.empty()) throw ParseError("--input is required");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input '" + path + "'");
  return in;
}

// Maps library exceptions raised while computing onto the exit-code contract.
int numeric_failure(std::ostream& err) {
  try {
    throw;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << '\n';
    if (e.suggested_n() > 0) err << "minimal n: " << e.suggested_n() << '\n';
    return kResolutionRefused;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
}

unsigned threads_from_env() {
  const char* env = std::getenv("GAMMAREG_THREADS");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return 0;
  return static_cast<unsigned>(v);
}

std::vector<double> t_values(const RunConfig& cfg) {
  std::vector<double> ts(cfg.t_count);
  if (cfg.t_count == 1) {
    ts[0] = cfg.t_max;
    return ts;
  }
  const double span = static_cast<double>(cfg.t_count - 1);
  for (std::size_t k = 0; k < cfg.t_count; ++k) {
    const double w = static_cast<double>(k) / span;
    ts[k] = cfg.linear_t ? cfg.t_max + w * (cfg.t_min - cfg.t_max)
                         : cfg.t_max * std::pow(cfg.t_min / cfg.t_max, w);
  }
  ts.back() = cfg.t_min;
  return ts;
}

}  // namespace

int cmd_conjugate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<SampledFn1D> f;
  try {
    auto in = open_input(cfg.input);
    f = read_sampled_1d(in);
    if (cfg.bi && cfg.bi_out.empty() && (cfg.out.empty() || cfg.out == "-")) {
      throw ParseError("--bi needs --out or --bi-out");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    const SlopeGrid slopes =
        cfg.slope_count > 0
            ? SlopeGrid(make_uniform_grid(cfg.slope_min, cfg.slope_max, cfg.slope_count))
            : auto_slope_grid(*f);
    std::ostringstream conj;
    write_sampled_1d(conj, lf_conjugate(*f, slopes));
    std::string bi_text;
    if (cfg.bi) {
      std::ostringstream bi;
      write_sampled_1d(bi, biconjugate(*f, slopes));
      bi_text = bi.str();
    }
    write_output(cfg.out, conj.str(), out);
    if (cfg.bi) {
      std::string path = cfg.bi_out;
      if (path.empty()) {
        path = cfg.out;
        const auto dot = path.rfind(".csv");
        path = dot != std::string::npos && dot + 4 == path.size()
                   ? path.substr(0, dot) + ".bi.csv"
                   : path + ".bi.csv";
      }
      write_output(path, bi_text, out);
    }
  } catch (...) {
    return numeric_failure(err);
  }
  return kOk;
}

int cmd_envelope(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool two_d = cfg.command == "envelope2d";
  std::optional<SampledFn1D> f1;
  std::optional<SampledFn2D> f2;
  try {
    auto in = open_input(cfg.input);
    if (two_d) {
      f2 = read_sampled_2d(in);
    } else {
      f1 = read_sampled_1d(in);
    }
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    std::ostringstream text;
    if (!two_d) {
      const EnvelopeResult1D env = envelope_1d(*f1);
      text << "x,value,contact\n";
      for (std::size_t i = 0; i < f1->size(); ++i) {
        text << format_double(f1->x(i)) << ',' << format_double(env.envelope[i]) << ','
             << (env.contact[i] ? 1 : 0) << '\n';
      }
      write_output(cfg.out, text.str(), out);
      return kOk;
    }
    const EnvelopeResult2D env = envelope_2d(*f2);
    const Grid2D& g = f2->grid();
    text << "x,y,value,contact\n";
    for (std::size_t k = 0; k < f2->size(); ++k) {
      text << format_double(g.x_of(k)) << ',' << format_double(g.y_of(k)) << ','
           << format_double(env.envelope[k]) << ',' << (env.contact[k] ? 1 : 0) << '\n';
    }
    std::string facet_text;
    if (!cfg.facets.empty()) {
      std::ostringstream dump;
      dump << "i,j,k,nx,ny,nz,offset\n";
      for (const Facet& fa : env.facets) {
        dump << fa.v[0] << ',' << fa.v[1] << ',' << fa.v[2] << ','
             << format_double(fa.normal[0]) << ',' << format_double(fa.normal[1]) << ','
             << format_double(fa.normal[2]) << ',' << format_double(fa.offset) << '\n';
      }
      facet_text = dump.str();
    }
    write_output(cfg.out, text.str(), out);
    if (!cfg.facets.empty()) write_output(cfg.facets, facet_text, out);
  } catch (...) {
    return numeric_failure(err);
  }
  return kOk;
}

int cmd_counterexample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<PhiSpec> spec;
  try {
    spec = PhiSpec::parse(cfg.phi);
    if (!(cfg.t_min > 0.0 && cfg.t_max > 0.0 && cfg.t_min < cfg.t_max)) {
      throw ParseError("need 0 < t-min < t-max");
    }
    if (cfg.t_max > spec->delta()) throw ParseError("t-max exceeds the modulus domain");
    if (cfg.t_count < 1) throw ParseError("t-count must be >= 1");
    if (cfg.n1d < 3 || cfg.n1d % 2 == 0) throw ParseError("n1d must be odd and >= 3");
    if (!(cfg.grading >= 1.0)) throw ParseError("grading must be >= 1");
    if (cfg.n2d < 3) throw ParseError("n2d must be >= 3");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    const std::vector<double> ts = t_values(cfg);
    CurveOptions opts;
    opts.grid.n = cfg.n1d;
    opts.grid.p = cfg.grading;
    opts.threads = cfg.threads;

    const Grid1D grid = make_kit_grid(cfg.n1d, cfg.grading);
    require_resolution(grid, phi_eval(*spec, cfg.t_min), opts.grid);
    const CounterexampleKit kit = build_v(*spec, grid);
    const RatioCurve curve = sharpness_curve(kit, ts, opts);

    nlohmann::json checks = nlohmann::json::array();
    bool pass = true;

    double liminf = std::numeric_limits<double>::quiet_NaN();
    if (curve.samples.size() >= 3) {
      liminf = liminf_estimate(curve);
      const bool ok = liminf > 0.0;
      checks.push_back(check_record("liminf", ok, {{"estimate", liminf}}));
      pass = pass && ok;
    } else {
      checks.push_back(check_record("liminf", false, {{"note", "needs >= 3 samples"}}));
      pass = false;
    }

    bool bound_ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : curve.samples) {
      bound_ok = bound_ok && s.ratio >= s.bound - 0.02 * std::abs(s.bound);
      worst = std::min(worst, s.ratio - s.bound);
    }
    checks.push_back(check_record("proof_bound", bound_ok, {{"min_ratio_minus_bound", worst}}));
    pass = pass && bound_ok;

    const OepsReport oeps = oeps_check(curve, cfg.oeps_threshold);
    checks.push_back(to_json(oeps));
    pass = pass && oeps.pass;

    const Grid2D disk = make_disk_grid(cfg.n2d);
    const ConvexRegionReport region =
        convex_region_report(disk, cfg.samples, cfg.seed, cfg.eps_band);
    checks.push_back(to_json(region));
    pass = pass && region.pass;

    if (cfg.with_2d) {
      const CrossSectionReport cross =
          cross_section_check(kit, disk, ts.front(), cfg.tolerance);
      checks.push_back(to_json(cross));
      pass = pass && cross.pass;
    }

    nlohmann::json report = {{"command", "counterexample"},
                             {"phi", cfg.phi},
                             {"n1d", cfg.n1d},
                             {"grading", cfg.grading},
                             {"pass", pass},
                             {"checks", checks}};

    std::string svg_text;
    if (!cfg.svg.empty()) {
      Series ratio{"ratio = gap0 / (t phi(t))", {}, {}};
      Series bound{"proof bound", {}, {}};
      Series sup{"supdist / t", {}, {}};
      for (const auto& s : curve.samples) {
        ratio.xs.push_back(s.t);
        ratio.ys.push_back(s.ratio);
        bound.xs.push_back(s.t);
        bound.ys.push_back(s.bound);
        sup.xs.push_back(s.t);
        sup.ys.push_back(s.supdist / s.t);
      }
      svg_text = loglog_svg({{"gap ratio vs t (" + cfg.phi + ")", "t", "ratio", {ratio, bound}},
                             {"sup distance over t", "t", "supdist / t", {sup}}});
    }

    write_output(cfg.out, curve_csv(curve), out);
    if (!cfg.report.empty()) write_output(cfg.report, report.dump(2) + "\n", out);
    if (!cfg.svg.empty()) write_output(cfg.svg, svg_text, out);
    if (!cfg.kit_out.empty()) {
      std::ostringstream kit_text;
      write_csv(kit_text, kit_table(kit));
      write_output(cfg.kit_out, kit_text.str(), out);
    }
    err << "liminf estimate " << format_double(liminf) << ", supdist/t exponent "
        << format_double(oeps.exponent) << ", report " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kVerificationFailed;
  } catch (...) {
    return numeric_failure(err);
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& all = verify::acceptance_criteria();
  std::vector<const verify::Criterion*> selected = verify::select(all, cfg.only);
  if (selected.empty()) {
    err << "error: --only matched no criterion\n";
    return kInputError;
  }
  const auto results = verify::run(selected, cfg.threads);
  if (cfg.json) {
    out << verify::to_json(results).dump(2) << '\n';
  } else {
    verify::print_table(out, results);
  }
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const verify::CriterionResult& r) { return r.pass; });
  return ok ? kOk : kVerificationFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  RunConfig cfg;
  CLI::App app{"gammareg: convex envelopes, Legendre-Fenchel transforms and the "
               "perturbation gap study"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* conj = app.add_subcommand("conjugate", "discrete Legendre-Fenchel transform of a 1D CSV");
  conj->add_option("--input", cfg.input, "input CSV (x,value)")->required();
  conj->add_option("--out", cfg.out, "conjugate CSV (default: stdout)");
  conj->add_flag("--bi", cfg.bi, "also write the biconjugate on the input nodes");
  conj->add_option("--bi-out", cfg.bi_out, "biconjugate CSV (default: <out>.bi.csv)");
  conj->add_option("--slope-min", cfg.slope_min, "uniform slope grid lower end");
  conj->add_option("--slope-max", cfg.slope_max, "uniform slope grid upper end");
  conj->add_option("--slope-count", cfg.slope_count,
                   "uniform slope grid size (0: hull slopes)");

  auto* env1 = app.add_subcommand("envelope1d", "convex envelope of a 1D CSV");
  auto* env2 = app.add_subcommand("envelope2d", "convex envelope of a 2D CSV");
  for (auto* sub : {env1, env2}) {
    sub->add_option("--input", cfg.input, "input CSV")->required();
    sub->add_option("--out", cfg.out, "envelope CSV with contact column (default: stdout)");
  }
  env2->add_option("--facets", cfg.facets, "facet dump CSV (i,j,k,nx,ny,nz,offset)");

  auto* ce = app.add_subcommand("counterexample", "build and measure the perturbation family");
  ce->add_option("--phi", cfg.phi, "modulus: power:ALPHA or table:PATH");
  ce->add_option("--t-min", cfg.t_min, "smallest t");
  ce->add_option("--t-max", cfg.t_max, "largest t");
  ce->add_option("--t-count", cfg.t_count, "number of t samples");
  ce->add_flag("--linear", cfg.linear_t, "linear instead of geometric t spacing");
  ce->add_option("--n1d", cfg.n1d, "1D kit grid size (odd)");
  ce->add_option("--grading", cfg.grading, "grid grading exponent p >= 1");
  ce->add_option("--n2d", cfg.n2d, "2D disk grid size per axis");
  ce->add_flag("--with-2d", cfg.with_2d, "run the 2D cross-section check at the largest t");
  ce->add_option("--tolerance", cfg.tolerance, "cross-section relative tolerance");
  ce->add_option("--oeps-threshold", cfg.oeps_threshold, "bound on the final supdist/t");
  ce->add_option("--eps-band", cfg.eps_band, "exceptional band half-width");
  ce->add_option("--samples", cfg.samples, "convex-region sample points");
  ce->add_option("--seed", cfg.seed, "convex-region seed");
  ce->add_option("--out", cfg.out, "curve CSV (default: stdout)");
  ce->add_option("--report", cfg.report, "report JSON");
  ce->add_option("--svg", cfg.svg, "log-log SVG plot");
  ce->add_option("--kit-out", cfg.kit_out, "kit CSV (x,psi,vprime,v)");

  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  ver->add_option("--only", cfg.only, "criterion ids or tags to run")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ver->add_flag("--json", cfg.json, "machine-readable results");

  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  cfg.threads = threads_from_env();
  if (conj->parsed()) {
    cfg.command = "conjugate";
    return cmd_conjugate(cfg, out, err);
  }
  if (env1->parsed() || env2->parsed()) {
    cfg.command = env1->parsed() ? "envelope1d" : "envelope2d";
    return cmd_envelope(cfg, out, err);
  }
  if (ce->parsed()) {
    cfg.command = "counterexample";
    return cmd_counterexample(cfg, out, err);
  }
  cfg.command = "verify";
  return cmd_verify(cfg, out, err);
}

}  // namespace gammareg::cli
