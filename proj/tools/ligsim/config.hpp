#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ligsim {

// Thrown for anything the user can fix in the config or on the command line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string model = "frw1";
  double r_min = 3.0;
  double r_max = 7.0;
  double r0 = 5.0;
  int n = 16384;
  double duration = 1.0;
  bool reversed = false;
  double sigma = 1.0 / 3.0;
  double eps = 1e-10;
  double t0 = 15.0;
  double psi0 = 0.0;
  double b0 = 1.0;
  int snapshot_every = 0;
  std::string output_dir = "out";
  bool cones = false;
  double tov_threshold = 0.01;
  std::vector<int> levels{64, 128, 256, 512, 1024};
  int reference_n = 0;
  bool continue_chop = false;
  int min_cells = 8;

  bool matched() const { return model == "frw1-tov" || model == "frw2-tov"; }
};

const std::vector<std::string>& config_keys();

// key=value lines; '#' starts a comment. Unknown keys and malformed values throw.
std::map<std::string, std::string> read_config_file(const std::string& path);

void apply_config(RunConfig& cfg, const std::string& key, const std::string& value);
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);
void validate(const RunConfig& cfg);

}  // namespace ligsim
