#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocrs::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCheckFailed = 2;

/// Bad flags, unreadable files, malformed JSON. Always exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string scheme = "simple";
  std::string order = "identity";
  std::vector<int> ks;
  std::optional<double> d;
  std::optional<double> b;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string instance_path;
  std::string stress;
  std::string dists_path;
  std::string out_path;
  std::string format = "csv";
  std::string method = "exact-dp";
  double a = 1.0;
  std::size_t cases = 1000;
};

/// One-line rendering of every experiment setting, without the leading "# ".
std::string config_header(const RunConfig& config);

/// Executes the subcommand. Exit codes: 0 all checks pass, 2 a check failed, 1 input error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocrs::cli
