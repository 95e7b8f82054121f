#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "mastereq/repro.hpp"
#include "mastereq/riccati.hpp"

namespace mastereq::repro {

namespace {

struct Options {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::vector<std::string> d_tokens;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  bool dump_trajectory = false;
  std::optional<double> t_max;
};

void add_common(CLI::App* cmd, Options& opts, bool with_source) {
  if (with_source) {
    cmd->add_option("--config", opts.config_path, "run config (JSON)");
    cmd->add_option("--preset", opts.preset_name, "figure1..figure5");
  }
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--d", opts.d_tokens, "D value (negative number or inf); repeatable")->allow_extra_args(false);
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"csv"}));
}

RunConfig resolve(const Options& opts, const std::string& forced_preset) {
  const std::string& preset_name = forced_preset.empty() ? opts.preset_name : forced_preset;
  if (!opts.config_path.empty() && !preset_name.empty()) throw ConfigError("use either --config or --preset");
  if (opts.config_path.empty() && preset_name.empty()) throw ConfigError("one of --config or --preset is required");
  RunConfig config = opts.config_path.empty() ? preset(preset_name) : load_run_config_file(opts.config_path);

  if (!opts.d_tokens.empty()) {
    std::vector<DParameter> ds;
    for (const auto& token : opts.d_tokens) ds.push_back(parse_d(token));
    config.set_d_values(std::move(ds));
  }
  if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
  if (opts.seed) config.seed = *opts.seed;
  if (opts.t_max) config.simulate.t_max = opts.t_max;
  config.simulate.dump_trajectory = config.simulate.dump_trajectory || opts.dump_trajectory;
  config.format = opts.format;
  return config;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parametric stationary solutions of the birth-death master equation", "mastereq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("mastereq ") + tool_version);

  Options opts;
  auto* solve = app.add_subcommand("solve", "write P_n(D) for every D");
  auto* verify = app.add_subcommand("verify", "run the tolerance-gated invariant checks");
  auto* simulate = app.add_subcommand("simulate", "SSA cross-check of the parametric solutions");
  add_common(solve, opts, true);
  add_common(verify, opts, true);
  add_common(simulate, opts, true);
  simulate->add_flag("--dump-trajectory", opts.dump_trajectory, "also write time,state CSVs");
  simulate->add_option("--t-max", opts.t_max, "simulated time per D (default: sized for ~1e6 jumps)");

  std::vector<CLI::App*> figures;
  for (const auto& name : preset_names()) {
    auto* fig = app.add_subcommand(name, "solve the " + name + " preset");
    add_common(fig, opts, false);
    figures.push_back(fig);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*verify) {
      const VerifyReport report = cmd_verify(resolve(opts, ""));
      out << report.to_text();
      if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        std::ofstream(std::filesystem::path(opts.out_dir) / "verify_report.json") << report.to_json().dump(2) << '\n';
      }
      return report.passed() ? 0 : 1;
    }
    if (*simulate) {
      const SimulateSummary summary = cmd_simulate(resolve(opts, ""));
      out << summary.to_text();
      return summary.passed() ? 0 : 1;
    }
    std::string forced;
    for (auto* fig : figures) {
      if (*fig) forced = fig->get_name();
    }
    const SolveSummary summary = cmd_solve(resolve(opts, forced));
    out << summary.to_text();
    return summary.ok() ? 0 : 1;
  } catch (const InvalidSchedule& e) {
    err << "invalid schedule: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mastereq::repro
