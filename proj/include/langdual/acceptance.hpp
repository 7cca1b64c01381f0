#pragma once

// The primary acceptance suite: seven exact criteria, each with a pinned
// time budget, shared by the acceptance binary and `langdual accept`.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace langdual::acceptance {

struct Options {
  std::size_t threads = 1;
  std::size_t window = 2;  // cell certification window
  std::uint64_t seed = 20;
  std::optional<std::string> journal;  // KL cache for the bridge and cell runs
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string summary;
  nlohmann::json details;
};

// Criteria 1-3 share one computation, so they are produced together.
std::vector<CriterionResult> bridge_criteria(const Options& opt);
CriterionResult mckay_criterion(const Options& opt);
CriterionResult cells_criterion(const Options& opt);
CriterionResult torus_criterion(const Options& opt);
CriterionResult property_criterion(const Options& opt);

// All seven in order; `on_result` sees each result as soon as it is final.
std::vector<CriterionResult> run_primary(const Options& opt,
                                         const std::function<void(const CriterionResult&)>& on_result = {});

nlohmann::json to_json(const CriterionResult& r);
// "PASS 1 bridge-x-equality: ..." on one line.
std::string format_line(const CriterionResult& r);

}  // namespace langdual::acceptance
