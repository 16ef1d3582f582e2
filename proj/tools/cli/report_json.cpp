#include "cli/report_json.hpp"

#include <sstream>

#include "gammareg/csv.hpp"

namespace gammareg::cli {

nlohmann::json check_record(const std::string& check, bool pass,
                            nlohmann::json details) {
  return {{"check", check}, {"pass", pass}, {"details", std::move(details)}};
}

nlohmann::json to_json(const OepsReport& r) {
  return check_record("oeps", r.pass,
                      {{"trivial", r.trivial},
                       {"decreasing", r.decreasing},
                       {"threshold", r.threshold},
                       {"final_value", r.final_value},
                       {"exponent", r.exponent},
                       {"t", r.ts},
                       {"supdist_over_t", r.values},
                       {"note", r.note}});
}

nlohmann::json to_json(const CrossSectionReport& r) {
  return check_record("cross_section", r.pass,
                      {{"t", r.t},
                       {"tolerance", r.tolerance},
                       {"atol", r.atol},
                       {"row_bound_holds", r.row_bound_holds},
                       {"gap_bound_holds", r.gap_bound_holds},
                       {"gap2d", r.gap2d},
                       {"gap1d", r.gap1d},
                       {"max_row_excess", r.max_row_excess},
                       {"max_row_restriction_excess", r.max_row_restriction_excess},
                       {"row_nodes_in_flat", r.row_nodes_in_flat}});
}

nlohmann::json to_json(const ConvexRegionReport& r) {
  return check_record(
      "convex_region", r.pass,
      {{"samples", r.samples},
       {"seed", r.seed},
       {"eps_band", r.eps_band},
       {"region_counts",
        {{"north", r.region_counts[0]},
         {"south", r.region_counts[1]},
         {"east", r.region_counts[2]},
         {"west", r.region_counts[3]},
         {"exterior", r.region_counts[4]},
         {"exceptional", r.region_counts[5]}}},
       {"midpoint_checks", r.midpoint_checks},
       {"midpoint_failures", r.midpoint_failures},
       {"grid_checks", r.grid_checks},
       {"grid_failures", r.grid_failures},
       {"straddle_checks", r.straddle_checks},
       {"straddle_failures", r.straddle_failures},
       {"band_fraction", r.band_fraction},
       {"expected_fraction", r.expected_fraction},
       {"fraction_bound", r.fraction_bound}});
}

std::string curve_csv(const RatioCurve& curve) {
  CsvTable table;
  table.header = {"t", "gap0", "supdist", "ratio", "bound", "xstar"};
  for (const auto& s : curve.samples) {
    table.rows.push_back({s.t, s.gap0, s.supdist, s.ratio, s.bound, s.xstar});
  }
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

}  // namespace gammareg::cli
