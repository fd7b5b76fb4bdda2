#include "horseshoe/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace horseshoe {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "validate",      "verify-cones", "verify-returns", "verify-escape",
      "periodic",      "lyapunov",     "nonuniformity"};
  return names;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool parse_long(const std::string& s, long* out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool parse_u64(const std::string& s, std::uint64_t* out) {
  if (s.empty() || s[0] == '-') return false;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = static_cast<std::uint64_t>(v);
  return true;
}

bool parse_bool(const std::string& s, bool* out) {
  if (s == "true") {
    *out = true;
    return true;
  }
  if (s == "false") {
    *out = false;
    return true;
  }
  return false;
}

bool parse_int(const std::string& s, int* out) {
  long v = 0;
  if (!parse_long(s, &v)) return false;
  if (v < -2147483647L || v > 2147483647L) return false;
  *out = static_cast<int>(v);
  return true;
}

// apply one key to cfg; returns an error message or ""
std::string apply_key(RunConfig& cfg, const std::string& key,
                      const std::string& val) {
  double d = 0.0;
  long l = 0;
  int i = 0;
  std::uint64_t u = 0;
  bool b = false;

  if (key == "lambda" || key == "sigma" || key == "c" || key == "q" ||
      key == "alpha" || key == "y3" || key == "d3" || key == "y4a" ||
      key == "y4b") {
    if (!parse_double(val, &d)) return "expected a number for " + key;
    if (key == "lambda") cfg.params.lambda = d;
    else if (key == "sigma") cfg.params.sigma = d;
    else if (key == "c") cfg.params.c = d;
    else if (key == "q") cfg.params.q = d;
    else if (key == "alpha") cfg.params.alpha = d;
    else if (key == "y3") cfg.params.y3 = d;
    else if (key == "d3") cfg.params.d3 = d;
    else if (key == "y4a") cfg.params.y4a = d;
    else cfg.params.y4b = d;
    return "";
  }
  if (key == "r5_orientation") {
    if (val == "preserving") {
      cfg.params.r5_orientation = R5Orientation::preserving;
      return "";
    }
    if (val == "reversing") {
      cfg.params.r5_orientation = R5Orientation::reversing;
      return "";
    }
    return "r5_orientation must be preserving or reversing";
  }
  if (key == "suites") {
    cfg.suites.clear();
    std::stringstream ss(val);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.suites.push_back(item);
    }
    return "";
  }
  if (key == "samples_returns" || key == "samples_cones" ||
      key == "samples_escape" || key == "samples_outside" ||
      key == "profile_n") {
    if (!parse_long(val, &l)) return "expected an integer for " + key;
    if (key == "samples_returns") cfg.samples_returns = l;
    else if (key == "samples_cones") cfg.samples_cones = l;
    else if (key == "samples_escape") cfg.samples_escape = l;
    else if (key == "samples_outside") cfg.samples_outside = l;
    else cfg.profile_n = l;
    return "";
  }
  if (key == "directions" || key == "max_iter" || key == "j_max" ||
      key == "max_period") {
    if (!parse_int(val, &i)) return "expected an integer for " + key;
    if (key == "directions") cfg.directions = i;
    else if (key == "max_iter") cfg.max_iter = i;
    else if (key == "j_max") cfg.j_max = i;
    else cfg.max_period = i;
    return "";
  }
  if (key == "out_dir") {
    if (val.empty()) return "out_dir must not be empty";
    cfg.out_dir = val;
    return "";
  }
  if (key == "seed") {
    if (!parse_u64(val, &u)) return "expected an unsigned integer for seed";
    cfg.seed = u;
    return "";
  }
  if (key == "allow_invalid_params") {
    if (!parse_bool(val, &b)) return "expected true or false for " + key;
    cfg.allow_invalid_params = b;
    return "";
  }
  return "unknown key " + key;
}

}  // namespace

ConfigResult parse_config(const std::string& text, const RunConfig& base) {
  ConfigResult res;
  res.cfg = base;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      res.error = "line " + std::to_string(line_no) + ": expected key = value";
      return res;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      res.error = "line " + std::to_string(line_no) + ": empty key";
      return res;
    }
    const std::string err = apply_key(res.cfg, key, val);
    if (!err.empty()) {
      res.error = "line " + std::to_string(line_no) + ": " + err;
      return res;
    }
  }
  const std::vector<std::string> bad = validate_config(res.cfg);
  if (!bad.empty()) {
    res.error = bad[0];
    return res;
  }
  res.ok = true;
  return res;
}

ConfigResult load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) {
    ConfigResult res;
    res.cfg = base;
    res.error = "cannot open config file " + path;
    return res;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.samples_returns < 1) out.push_back("samples_returns must be >= 1");
  if (cfg.samples_cones < 1) out.push_back("samples_cones must be >= 1");
  if (cfg.samples_escape < 1) out.push_back("samples_escape must be >= 1");
  if (cfg.samples_outside < 1) out.push_back("samples_outside must be >= 1");
  if (cfg.directions < 1) out.push_back("directions must be >= 1");
  if (cfg.max_iter < 1) out.push_back("max_iter must be >= 1");
  if (cfg.profile_n < 1) out.push_back("profile_n must be >= 1");
  if (cfg.j_max < 0) out.push_back("j_max must be >= 0");
  if (cfg.max_period < 1) out.push_back("max_period must be >= 1");
  const std::vector<std::string>& known = suite_names();
  for (const std::string& s : cfg.suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      out.push_back("unknown suite " + s);
    }
  }
  return out;
}

}  // namespace horseshoe
