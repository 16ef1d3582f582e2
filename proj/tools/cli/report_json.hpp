#pragma once

#include <string>

#include "gammareg/analysis.hpp"
#include "json.hpp"

namespace gammareg::cli {

// One `{check, pass, details}` record.
nlohmann::json check_record(const std::string& check, bool pass,
                            nlohmann::json details);

nlohmann::json to_json(const OepsReport& r);
nlohmann::json to_json(const CrossSectionReport& r);
nlohmann::json to_json(const ConvexRegionReport& r);

// Columns t,gap0,supdist,ratio,bound,xstar.
std::string curve_csv(const RatioCurve& curve);

}  // namespace gammareg::cli
