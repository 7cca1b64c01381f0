#pragma once

// Front end for the `langdual` binary: configuration, subcommand dispatch,
// run reports and the exit-code contract.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"
#include "langdual/hecke.hpp"

namespace langdual::cli {

// Stable process exit codes.
enum class Exit : int { Pass = 0, VerificationFailed = 1, Usage = 2, Budget = 3 };

enum class Format { Text, Json };

struct Config {
  std::size_t max_length = 40;     // longest element any KL table may hold
  std::size_t ball_cap = 200000;   // most elements a ball enumeration may produce
  std::size_t window = 2;          // certification window dL
  std::optional<std::string> cache;
  std::size_t threads = 1;
  Format format = Format::Text;

  // BadParameter unless caps are positive and window >= 1.
  void validate() const;
};

// Reads a JSON object with any of the keys max_length, ball_cap, window,
// cache, threads, format. Unknown keys are BadInput.
Config load_config(const std::string& path);
Config config_from_json(const nlohmann::json& j, Config base = {});

struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  bool pass = false;
  double wall_seconds = 0;
  hecke::CacheStats cache;
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> summary;  // lines for text output
  std::optional<Errc> error;
  std::string error_message;
  Exit exit = Exit::VerificationFailed;
};

inline constexpr int kReportVersion = 1;

nlohmann::json to_json(const RunReport& r);
std::string to_text(const RunReport& r);

// Exit code for a library error raised while verifying (1) or while
// reading user input (2); budget errors are always 3.
Exit exit_for(Errc code, bool input_stage);

// Entry point: args excludes the program name. Reports go to `out`,
// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace langdual::cli
