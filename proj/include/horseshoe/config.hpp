#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horseshoe/map.hpp"

namespace horseshoe {

// names of the verification suites, in the order they run and report
const std::vector<std::string>& suite_names();

// Everything a verification run depends on.  The flat config file uses these
// exact field names as keys (map parameters by their own field names), one
// `key = value` pair per line, `#` comments allowed.  Unknown keys are hard
// errors so a typo cannot silently weaken a run.
struct RunConfig {
  MapParams params;

  // empty selection = run every suite
  std::vector<std::string> suites;

  long samples_returns = 12000;  // fold-image starts for return-time checks
  long samples_cones = 12000;    // fold-image starts for cone inclusion
  long samples_escape = 10000;   // well points for escape/growth checks
  long samples_outside = 10000;  // points outside the widened well
  int directions = 10;           // cone directions tested per point
  int max_iter = 1000;           // per-orbit iteration budget
  long profile_n = 100;          // horizon of non-uniformity profiles
  int j_max = 60;                // ladder depth for the widened well test
  int max_period = 12;           // census depth

  std::string out_dir = "out";
  std::uint64_t seed = 20040617;
  bool allow_invalid_params = false;
};

struct ConfigResult {
  bool ok = false;
  RunConfig cfg;
  std::string error;  // parse or constraint message when !ok
};

// parse `key = value` text on top of base; unknown keys, malformed values,
// and violated count constraints all fail
ConfigResult parse_config(const std::string& text, const RunConfig& base);

// read the file and parse it; a missing file is an error
ConfigResult load_config(const std::string& path, const RunConfig& base);

// sample counts / horizons >= 1 and suite names known; empty = fine
std::vector<std::string> validate_config(const RunConfig& cfg);

}  // namespace horseshoe
