#include <fstream>

#include "cli/commands.hpp"
#include "gammareg/csv.hpp"
#include "gammareg/errors.hpp"
#include "json.hpp"

namespace gammareg::cli {

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParseError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ParseError("config file must hold a JSON object");

  std::vector<std::string> flags;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back(flag);
    } else if (value.is_number_integer()) {
      flags.push_back(flag);
      flags.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      flags.push_back(flag);
      flags.push_back(format_double(value.get<double>()));
    } else if (value.is_string()) {
      flags.push_back(flag);
      flags.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      for (const auto& item : value) {
        flags.push_back(flag);
        flags.push_back(item.is_string() ? item.get<std::string>() : item.dump());
      }
    } else {
      throw ParseError("config key '" + key + "' has an unsupported value");
    }
  }

  std::vector<std::string> merged;
  if (!rest.empty()) merged.push_back(rest.front());
  merged.insert(merged.end(), flags.begin(), flags.end());
  if (rest.size() > 1) merged.insert(merged.end(), rest.begin() + 1, rest.end());
  return merged;
}

}  // namespace gammareg::cli
