#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace sqcd::cli {

enum class Format { Csv, Json };

/// Every option of every subcommand.  A config file sets the same keys as the
/// long flags; flags given on the command line win.
struct RunConfig {
  std::string out;
  Format format = Format::Csv;
  std::uint64_t seed = 1;
  bool strict = false;
  int threads = 1;

  // torus
  double l1 = 6.283185307179586;
  double l2 = 6.283185307179586;
  double amp = 1.0;
  double coupling = 1.0;
  double hbar = 1.0;
  int nmax = 20;
  int kmax = 40;
  double width = 0.2;

  // λ grid
  double lambda_min = 0.0;
  double lambda_max = 5.0;
  int lambda_points = 51;

  // weyl, mc-average
  std::string kind;
  int d = 4;
  double volume = 1.0;
  int colours = 3;  // J
  int group_n = 3;  // SU(N)
  double spin = 0.5;
  double sigma = 0.0;
  std::size_t samples = 100000;
  int sites = 0;

  // chiral
  double zeta_min = 0.1;
  double zeta_max = 3.0;
  int zeta_points = 30;

  // wong
  double t_final = 10.0;
  double dt = 1e-3;
  int stride = 100;
  std::vector<double> momentum{1.0, 0.5, -0.3, 0.8};
  std::vector<double> spin_vector{0.0, 0.0, 0.5};

  // algebra-check
  std::string perturb;

  /// Throws sqcd::ConfigError.
  void validate(const std::string& command) const;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandResult {
  Table table;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  /// Empty on success, otherwise why the command failed.
  std::string failure;
};

CommandResult cmd_algebra_check(const RunConfig& cfg);
CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_trace(const RunConfig& cfg);
CommandResult cmd_weyl(const RunConfig& cfg);
CommandResult cmd_chiral(const RunConfig& cfg);
CommandResult cmd_wong(const RunConfig& cfg);
CommandResult cmd_mc_average(const RunConfig& cfg);

/// CSV: header row, one line per row, numbers as %.17g.
/// JSON: {"command", "columns", "rows": [{column: value}], "summary", "warnings"}.
std::string render(const std::string& command, const CommandResult& result, Format format);

/// Whole program: parse, validate, run, write.  Returns the exit status
/// (0 success, 1 failed check or computation, 2 usage or configuration error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqcd::cli
