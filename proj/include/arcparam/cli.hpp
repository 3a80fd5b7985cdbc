#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace arcparam::cli {

/// Thresholds used for pass/fail in reports. Every entry can be overridden
/// by name from the command line.
struct Tolerances {
  double onearc = 1e-9;
  double r_normalization = 1e-6;
  double normalization = 1e-10;
  double positivity = 1e-8;
  double gap_imaginarity = 1e-8;
  double total_mass = 1e-7;
  double moments = 1e-6;
  double cross_validation = 1e-5;
  double closure = 1e-6;

  /// Sets a tolerance by name; throws InvalidArgument on an unknown name.
  void set(const std::string& name, double value);
  nlohmann::json to_json() const;
};

struct RunConfig {
  std::string command;
  std::optional<std::string> arcs_path;
  std::optional<std::string> divisor_path;
  std::size_t N = 20;
  int level = 8;
  double radius = 0.85;
  std::size_t grid = 1024;
  std::size_t samples = 0;  // 0: command default (500 random points, 64 per sampling ring)
  std::uint64_t seed = 1;
  std::vector<double> r_values{0.5};
  std::size_t sweep_points = 4;  // divisor angles per gap in `sweep`
  std::optional<std::string> emit;    // CSV path, or output directory for pipeline and sweep
  std::optional<std::string> report;  // JSON report path; stdout when absent
  std::optional<std::string> plot;    // SVG of |α_n| and arg α_n
  Tolerances tol;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Range checks against the module contracts; throws InvalidArgument.
void validate(const RunConfig& config);

nlohmann::json cmd_verify_onearc(const RunConfig& config);
nlohmann::json cmd_mfunc(const RunConfig& config);
nlohmann::json cmd_measure(const RunConfig& config);
nlohmann::json cmd_verblunsky(const RunConfig& config);
nlohmann::json cmd_pipeline(const RunConfig& config);
nlohmann::json cmd_sweep(const RunConfig& config);

/// Dispatches the command, writes the report and returns the exit status.
/// Usage errors (bad input files, invalid divisors, out-of-range options) give 2,
/// failed checks and numerical errors give 1.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// SVG with two panels: |α_n| and arg α_n / π against n.
std::string alpha_plot_svg(const std::vector<std::pair<double, double>>& re_im);

}  // namespace arcparam::cli
