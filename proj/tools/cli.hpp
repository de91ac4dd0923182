#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tempo_katz/centrality.hpp"
#include "tempo_katz/line_space.hpp"

namespace tempo_katz::cli {

enum class Command { kRank, kCheckAlpha, kValidate, kDumpMatrix };
enum class OutputFormat { kCsv, kJson };

/// Exit codes of the tool.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,       // parse or validation failure, bad flags
  kAlphaOutOfRange = 2,    // alpha >= ell without --force
  kNumericalFailure = 3,   // non-convergence or failed solve
};

struct RunConfig {
  Command command = Command::kRank;
  std::string input;
  Mode mode = Mode::kStandard;
  std::string function = "katz";  // katz | exponential | coeffs:<path>
  double alpha = 0.0;
  Measure measure = Measure::kTotalCommunicability;
  OutputFormat format = OutputFormat::kCsv;
  double tol = 1e-12;
  bool force = false;
  bool no_fastpath = false;
  std::optional<std::string> output;  // stdout when unset

  // dump-matrix
  std::string matrix;
  std::optional<std::size_t> tau;
  std::optional<std::size_t> tau2;
};

struct RankedNode {
  NodeId node = 0;
  double value = 0.0;
  std::size_t rank = 0;
};

/// Sorted by value descending, ties by node id; equal values share a dense rank.
std::vector<RankedNode> dense_ranking(const Vector& values);

/// Executes one configured command. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry: parses args (args[0] is the program name) and runs.
/// A missing subcommand means `rank`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempo_katz::cli
