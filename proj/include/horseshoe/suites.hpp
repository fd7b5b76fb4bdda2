#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "horseshoe/config.hpp"
#include "horseshoe/lyapunov.hpp"
#include "horseshoe/periodic.hpp"

namespace horseshoe {

inline constexpr const char* k_tool_version = "hslab 1.0.0";

// outcome of one verification suite; seconds feeds the console table only
// and never reaches an output file, so fixed seeds give identical bytes
struct SuiteResult {
  std::string name;
  bool ran = false;
  bool pass = false;
  long samples = 0;
  long violations = 0;
  // smallest dimensionless slack observed (measured/required - 1 style);
  // negative means some check failed
  double worst_margin = 0.0;
  std::string note;
  double seconds = 0.0;
  bool over_budget = false;
};

struct Certificate {
  std::string tool_version;
  std::string params_fingerprint;
  std::uint64_t seed = 0;
  Thresholds th;
  std::vector<SuiteResult> suites;  // one entry per known suite, in order
  bool has_census = false;
  long census_orbits = 0;
  long census_words = 0;
  double min_exp_u = 0.0;  // smallest unstable exponent in the census
  double max_exp_s = 0.0;  // largest stable exponent in the census
  bool gap_pass = false;   // every census exponent pair outside the open gap
  bool overall_pass = false;  // every selected suite passed
  bool over_budget = false;
};

// wall-clock allowance per suite in seconds; exceeding any turns the run
// into exit code 3
double suite_budget(const std::string& name);

// run the selected suites (empty selection = all) and write per-suite CSV
// artifacts plus certificate.json into cfg.out_dir
Certificate run_suites(const RunConfig& cfg);

std::string certificate_json(const Certificate& cert);

void print_summary(const Certificate& cert, std::ostream& os);

// plot-ready CSV datasets: invariant-set cloud, region image boundaries,
// fold parabola overlay, cone-axis arrows, non-uniformity profile
bool emit_plot_data(const RunConfig& cfg, std::string* error);

}  // namespace horseshoe
