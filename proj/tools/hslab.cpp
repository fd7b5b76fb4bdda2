#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "horseshoe/config.hpp"
#include "horseshoe/map.hpp"
#include "horseshoe/periodic.hpp"
#include "horseshoe/suites.hpp"

namespace {

// exit codes: 0 all pass, 1 violations found, 2 invalid config,
// 3 runtime budget exceeded

int cmd_verify(const std::string& config_path,
               const std::vector<std::string>& suites, bool seed_set,
               std::uint64_t seed, const std::string& out_dir,
               bool allow_invalid) {
  horseshoe::RunConfig cfg;
  if (!config_path.empty()) {
    const horseshoe::ConfigResult res =
        horseshoe::load_config(config_path, cfg);
    if (!res.ok) {
      std::cerr << "config error: " << res.error << '\n';
      return 2;
    }
    cfg = res.cfg;
  }
  if (!suites.empty()) cfg.suites = suites;
  if (seed_set) cfg.seed = seed;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (allow_invalid) cfg.allow_invalid_params = true;

  const std::vector<std::string> cfg_bad = horseshoe::validate_config(cfg);
  if (!cfg_bad.empty()) {
    std::cerr << "config error: " << cfg_bad[0] << '\n';
    return 2;
  }
  const std::vector<std::string> bad = horseshoe::validate(cfg.params);
  if (!bad.empty() && !cfg.allow_invalid_params) {
    std::cerr << "invalid parameters (use --allow-invalid-params to probe "
                 "them anyway):\n";
    for (const std::string& msg : bad) std::cerr << "  " << msg << '\n';
    return 2;
  }

  const horseshoe::Certificate cert = horseshoe::run_suites(cfg);
  horseshoe::print_summary(cert, std::cout);
  if (cert.over_budget) {
    std::cerr << "runtime budget exceeded\n";
    return 3;
  }
  return cert.overall_pass ? 0 : 1;
}

int cmd_census(int max_period, const std::string& out_dir) {
  horseshoe::RunConfig cfg;
  cfg.max_period = max_period;
  cfg.out_dir = out_dir;
  cfg.suites = {"periodic"};
  const std::vector<std::string> cfg_bad = horseshoe::validate_config(cfg);
  if (!cfg_bad.empty()) {
    std::cerr << "config error: " << cfg_bad[0] << '\n';
    return 2;
  }
  const horseshoe::Certificate cert = horseshoe::run_suites(cfg);
  horseshoe::print_summary(cert, std::cout);
  if (cert.over_budget) {
    std::cerr << "runtime budget exceeded\n";
    return 3;
  }
  return cert.overall_pass ? 0 : 1;
}

int cmd_plot_data(const std::string& out_dir) {
  horseshoe::RunConfig cfg;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  std::string err;
  if (!horseshoe::emit_plot_data(cfg, &err)) {
    std::cerr << "plot-data error: " << err << '\n';
    return 2;
  }
  std::cout << "plot data written to " << cfg.out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification laboratory for a horseshoe map family with an "
               "internal tangency"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool allow_invalid = false;

  CLI::App* verify = app.add_subcommand(
      "verify", "run verification suites and write a certificate");
  verify->add_option("--config", config_path, "flat key = value config file");
  verify->add_option("--suite", suites,
                     "suite to run (repeatable); default: all");
  CLI::Option* seed_opt =
      verify->add_option("--seed", seed, "sampling seed (64-bit)");
  verify->add_option("--out", out_dir, "output directory");
  verify->add_flag("--allow-invalid-params", allow_invalid,
                   "run suites even when parameter validation fails");

  int max_period = 12;
  std::string census_out = "out";
  CLI::App* census = app.add_subcommand(
      "census", "enumerate realized periodic orbits and certify them");
  census->add_option("--max-period", max_period, "largest period to examine");
  census->add_option("--out", census_out, "output directory");

  std::string plot_out = "out";
  CLI::App* plot = app.add_subcommand(
      "plot-data", "emit plot-ready CSV datasets");
  plot->add_option("--out", plot_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    return cmd_verify(config_path, suites, seed_opt->count() > 0, seed,
                      out_dir, allow_invalid);
  }
  if (census->parsed()) return cmd_census(max_period, census_out);
  return cmd_plot_data(plot_out);
}
