#ifndef ROSENOPT_TOOLS_CLI_HPP
#define ROSENOPT_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosenopt/bench.hpp"

namespace rosenopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// --help was requested; what() holds the help text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Subcommand { Run, Bench, Contour, CheckGrad };

struct CliConfig {
  Subcommand subcommand = Subcommand::Run;
  Method method = Method::SteepestDescent;
  StepRule step = Fixed(0.000124);
  double kappa = 1.0;
  RealVector start{2.0, 2.0};
  TerminationPolicy policy{};
  std::optional<std::int64_t> restart;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> traj_path;
  std::optional<std::string> out_path;
  Interval x_range{-2.0, 6.0};
  Interval y_range{-2.0, 6.0};
  int resolution = 401;
};

/// argv without the program name. Throws UsageError or HelpRequested.
CliConfig parse_args(const std::vector<std::string>& args);

/// Runs a validated config and returns the process exit status.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with all errors mapped to exit statuses.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rosenopt::cli

#endif  // ROSENOPT_TOOLS_CLI_HPP
