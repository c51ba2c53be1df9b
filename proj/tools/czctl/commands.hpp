#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace czctl {

enum ExitCode : int {
  kPass = 0,
  kInputError = 1,
  kFail = 2,
  kInconclusive = 3,
  kBudgetExceeded = 4,
};

struct RunConfig {
  std::string command;  // check | bfun | simulate
  std::string variant;  // simulate: tstar | ratio | localize | msl
  std::string kernel_path;
  std::optional<int> n;
  std::optional<int> N;
  std::optional<int> grid;
  std::optional<double> extent;
  double p = 2.0;
  std::optional<double> weight_exp;
  std::vector<double> delta_list;
  std::vector<double> eps_levels;
  std::uint64_t seed = 1;
  std::string out;
  bool verify = false;
  std::vector<std::string> fields;
  std::vector<double> xi0;
  double s = 2.0;
  int l = 0;
  std::vector<double> radii;
  std::optional<double> window_delta;
  std::size_t budget = std::size_t{1} << 24;
};

// Throws std::invalid_argument on inconsistent flags.
void validate(const RunConfig& cfg);

// Each returns the process exit code and writes its report to `out`.
int cmd_check(const RunConfig& cfg, std::ostream& out);
int cmd_bfun(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

}  // namespace czctl
