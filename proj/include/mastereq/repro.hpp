#ifndef MASTEREQ_REPRO_HPP
#define MASTEREQ_REPRO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mastereq/distribution.hpp"
#include "mastereq/rate_schedule.hpp"

namespace mastereq::repro {

inline constexpr const char* tool_version = "0.1.0";

/// Invalid run configuration or command line (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "inf" / "-inf" give the sentinel; anything else must parse as a finite
/// negative number.
DParameter parse_d(std::string_view token);
nlohmann::json d_to_json(DParameter d);

struct SimulateOptions {
  int initial_state = 0;
  /// Jumps the post-burn-in window should hold on average; sets t_max when
  /// t_max is not given.
  double target_jumps = 1.2e6;
  double burn_in_fraction = 0.1;
  std::optional<double> t_max;
  double tv_tolerance = 0.02;
  bool dump_trajectory = false;
};

struct RunConfig {
  std::string name;
  RateSchedule schedule;
  /// Sorted ascending (sentinel first), duplicates removed.
  std::vector<DParameter> d_values;
  std::filesystem::path out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 20050101;
  SimulateOptions simulate;
  /// Provenance remarks copied into every output, e.g. which values are
  /// defaults rather than fixed figure parameters.
  std::vector<std::string> notes;

  void set_d_values(std::vector<DParameter> values);
};

/// {"schedule": {...}, "d_values": [-4, "inf"], "seed": 7,
///  "output": {"dir": "out", "format": "csv"},
///  "simulate": {"t_max": 1e6, "burn_in_fraction": 0.1, "initial_state": 0,
///               "target_jumps": 1.2e6}}
RunConfig load_run_config(const nlohmann::json& doc, std::string name = "config");
RunConfig load_run_config_file(const std::filesystem::path& path);

/// figure1..figure5, pure functions of the name.
RunConfig preset(std::string_view name);
const std::vector<std::string>& preset_names();

/// n,P_n table preceded by '#' metadata lines, 17 significant digits.
void write_distribution_csv(std::ostream& out, const Distribution& p, const std::vector<std::string>& metadata);
/// Reads back the P_n column, skipping '#' lines and the header.
std::vector<double> read_distribution_csv(std::istream& in);

std::string file_tag(DParameter d);

struct SolveEntry {
  DParameter d;
  std::optional<Distribution> distribution;
  std::string error;
  bool positive = false;
  double normalization_error = 0.0;
  double max_riccati_residual = 0.0;
  double max_effective_stationarity_residual = 0.0;
  std::filesystem::path file;
};

struct SolveSummary {
  std::string config_name;
  std::vector<SolveEntry> entries;

  bool ok() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Parametric stationary distribution for each D. Failures for one D are
/// recorded and do not stop the others. Writes P_D<tag>.csv and
/// summary.json into out_dir when write_files is set.
SolveSummary cmd_solve(const RunConfig& config, bool write_files = true);

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

struct VerifyEntry {
  DParameter d;
  std::vector<Check> checks;
  std::string error;

  bool passed() const;
};

struct VerifyReport {
  std::string config_name;
  PositivityReport positivity;
  std::vector<VerifyEntry> entries;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Tolerance-gated invariant checks for every D of the config.
VerifyReport cmd_verify(const RunConfig& config);

struct SimulateEntry {
  DParameter d;
  std::optional<Distribution> empirical;
  std::optional<Distribution> analytic;
  double total_variation = 0.0;
  std::size_t jumps = 0;
  double t_max = 0.0;
  std::uint64_t seed = 0;
  bool frozen = false;
  std::string error;
  std::filesystem::path file;

  bool passed(double tolerance) const;
};

struct SimulateSummary {
  std::string config_name;
  double tolerance = 0.02;
  std::vector<SimulateEntry> entries;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// SSA of the effective chain for each finite D (original chain for the
/// sentinel), compared with the parametric prediction. Streams per D are
/// split from config.seed by position in the sorted D list.
SimulateSummary cmd_simulate(const RunConfig& config, bool write_files = true);

/// Entry point behind the mastereq binary. Exit codes: 0 success,
/// 1 verification failure, 2 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mastereq::repro

#endif  // MASTEREQ_REPRO_HPP
