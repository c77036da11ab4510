#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ligsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE || x < -2147483647L || x > 2147483647L) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<int> to_levels(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(key, trim(item)));
  if (out.empty()) throw ConfigError(key + ": expected a comma-separated list of grid sizes");
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "model",  "r_min",          "r_max",         "r0",         "n",
      "duration", "reversed",     "sigma",         "eps",        "t0",
      "psi0",   "b0",             "snapshot_every", "output_dir", "cones",
      "tov_threshold", "levels",  "reference_n",   "continue_chop", "min_cells"};
  return keys;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (kv.count(key)) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") {
    cfg.model = value;
  } else if (key == "r_min") {
    cfg.r_min = to_double(key, value);
  } else if (key == "r_max") {
    cfg.r_max = to_double(key, value);
  } else if (key == "r0") {
    cfg.r0 = to_double(key, value);
  } else if (key == "n") {
    cfg.n = to_int(key, value);
  } else if (key == "duration") {
    cfg.duration = to_double(key, value);
  } else if (key == "reversed") {
    cfg.reversed = to_bool(key, value);
  } else if (key == "sigma") {
    cfg.sigma = to_double(key, value);
  } else if (key == "eps") {
    cfg.eps = to_double(key, value);
  } else if (key == "t0") {
    cfg.t0 = to_double(key, value);
  } else if (key == "psi0") {
    cfg.psi0 = to_double(key, value);
  } else if (key == "b0") {
    cfg.b0 = to_double(key, value);
  } else if (key == "snapshot_every") {
    cfg.snapshot_every = to_int(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "cones") {
    cfg.cones = to_bool(key, value);
  } else if (key == "tov_threshold") {
    cfg.tov_threshold = to_double(key, value);
  } else if (key == "levels") {
    cfg.levels = to_levels(key, value);
  } else if (key == "reference_n") {
    cfg.reference_n = to_int(key, value);
  } else if (key == "continue_chop") {
    cfg.continue_chop = to_bool(key, value);
  } else if (key == "min_cells") {
    cfg.min_cells = to_int(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) apply_config(cfg, k, v);
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> models{"frw1", "frw2", "tov", "frw1-tov", "frw2-tov"};
  if (std::find(models.begin(), models.end(), cfg.model) == models.end()) {
    throw ConfigError("model must be one of frw1, frw2, tov, frw1-tov, frw2-tov");
  }
  if (cfg.n < 8) throw ConfigError("n must be at least 8");
  if (!(cfg.r_min > 0.0) || !(cfg.r_max > cfg.r_min)) {
    throw ConfigError("need 0 < r_min < r_max");
  }
  if (cfg.matched() && !(cfg.r0 > cfg.r_min && cfg.r0 < cfg.r_max)) {
    throw ConfigError("r0 must lie strictly between r_min and r_max");
  }
  if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(cfg.duration > 0.0)) throw ConfigError("duration must be positive");
  if (cfg.snapshot_every < 0) throw ConfigError("snapshot_every must be nonnegative");
  if (!(cfg.tov_threshold > 0.0)) throw ConfigError("tov_threshold must be positive");
  if (cfg.reversed && cfg.model != "frw1-tov") {
    throw ConfigError("reversed runs are defined for the frw1-tov model only");
  }
  if (cfg.min_cells < 3) throw ConfigError("min_cells must be at least 3");
  for (int n : cfg.levels) {
    if (n < 8) throw ConfigError("every level must be at least 8");
  }
  if (!std::is_sorted(cfg.levels.begin(), cfg.levels.end())) {
    throw ConfigError("levels must be increasing");
  }
  if (cfg.reference_n != 0 && cfg.reference_n <= cfg.levels.back()) {
    throw ConfigError("reference_n must exceed the finest level");
  }
  if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

}  // namespace ligsim
