#ifndef PMIX_CLI_HPP
#define PMIX_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"

namespace pmix
{

enum ExitStatus : int { ExitPass = 0, ExitFail = 1, ExitError = 2 };

/// One invocation of the command-line tool. Unset parameters fall back to the
/// command's documented default or are reported as missing.
struct RunConfig
{
  std::string command;
  std::filesystem::path group;
  std::optional<std::filesystem::path> table;
  std::optional<std::filesystem::path> request;
  std::string output = "-";
  std::optional<double> tolerance;
  std::size_t max_order = default_max_order;

  std::optional<std::string> A, B, C, X; // set specifications
  std::optional<std::uint64_t> g;
  std::optional<std::size_t> class_i, class_j, class_l;

  std::optional<double> x;
  std::optional<double> epsilon;
  std::optional<double> eta;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<double> exponent;
  std::optional<double> threshold;
  std::optional<double> c_over_n;
  std::optional<double> target_exponent;
  std::optional<int> i;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> g_count;
  bool certify = true;
};

struct RunResult
{
  int status = ExitError;
  /// The report, or {"error": {"code", "message"}} when status is ExitError.
  Json document;
  /// Set for commands whose output is a bare file format rather than a report.
  std::optional<std::string> raw;
};

/// Echo of the parameters that were set, as embedded in every report.
Json config_echo(RunConfig const &config);

/// Runs one command. Never throws; errors map to ExitError.
RunResult run_command(RunConfig const &config);

/// Parses argv, runs the command, writes the report to --output (or `out` for
/// "-") and errors to `err`. Returns the exit status.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace pmix

#endif // PMIX_CLI_HPP
