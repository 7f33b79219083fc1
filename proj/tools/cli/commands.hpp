#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mgtd::cli {

// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,      // also usage errors
  kDomainError = 2,  // bad records, calibration failure, config/table mismatch
};

struct CalibrateArgs {
  std::string config;
  std::string input;
  std::optional<std::string> out_table;  // falls back to the config's "table"
};

struct PredictArgs {
  std::string config;
  std::optional<std::string> table;  // falls back to the config's "table"
  std::string input;
  std::string out;
};

struct EvaluateArgs {
  std::string pred;
  std::string gold;
  std::string out;
  std::optional<std::string> config;  // restricts AUC to the configured channels
};

struct ObfuscateArgs {
  double sample_rate = 0.2;
  double char_rate = 0.1;
  std::uint64_t seed = 0;
  std::string input;
  std::string out;
  std::optional<std::string> map;
};

struct InspectArgs {
  std::string table;
};

int run_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err);
int run_predict(const PredictArgs& args, std::ostream& out, std::ostream& err);
int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int run_obfuscate(const ObfuscateArgs& args, std::ostream& out, std::ostream& err);
int run_inspect(const InspectArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mgtd::cli
