#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace gammareg::verify {

struct Outcome {
  bool pass = false;
  std::string detail;
  nlohmann::json metrics = nlohmann::json::object();
};

struct Criterion {
  int id = 0;
  std::string key;
  std::string name;
  std::vector<std::string> tags;
  double budget_seconds = 0.0;
  std::function<Outcome(unsigned threads)> body;
};

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string name;
  bool pass = false;  // outcome passed and finished within budget
  bool within_budget = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
  nlohmann::json metrics;
};

const std::vector<Criterion>& acceptance_criteria();

// Keeps criteria whose id, key or any tag equals one of `only`; all when
// `only` is empty.
std::vector<const Criterion*> select(const std::vector<Criterion>& all,
                                     const std::vector<std::string>& only);

// Exceptions thrown by a body are reported as failures.
std::vector<CriterionResult> run(const std::vector<const Criterion*>& selected,
                                 unsigned threads);

void print_table(std::ostream& out, const std::vector<CriterionResult>& results);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace gammareg::verify
