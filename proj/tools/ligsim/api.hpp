#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lig/lig.h"

namespace ligsim {

enum ExitCode { kOk = 0, kConfig = 2, kHorizon = 3, kNumerical = 4 };

class ApiError : public std::runtime_error {
 public:
  ApiError(lig_status s, const std::string& what) : std::runtime_error(what), status_(s) {}
  lig_status status() const { return status_; }
  int exit_code() const {
    switch (status_) {
      case LIG_INVALID_ARGUMENT:
        return kConfig;
      case LIG_HORIZON_ENCOUNTERED:
      case LIG_SUPERLUMINAL_COORDINATE:
      case LIG_OUTSIDE_DOMAIN:
        return kHorizon;
      default:
        return kNumerical;
    }
  }

 private:
  lig_status status_;
};

inline void check(lig_status s) {
  if (s != LIG_OK) {
    throw ApiError(s, std::string(lig_status_name(s)) + ": " + lig_last_error());
  }
}

struct ModelDeleter {
  void operator()(lig_model* m) const { lig_model_destroy(m); }
};
struct SimDeleter {
  void operator()(lig_sim* s) const { lig_sim_destroy(s); }
};

using ModelPtr = std::unique_ptr<lig_model, ModelDeleter>;
using SimPtr = std::unique_ptr<lig_sim, SimDeleter>;

inline ModelPtr make_model(const lig_model_params& p) {
  lig_model* m = nullptr;
  check(lig_model_create(&p, &m));
  return ModelPtr(m);
}

inline SimPtr make_sim(const lig_model* m, const lig_grid& g, const lig_sim_options& o) {
  lig_sim* s = nullptr;
  check(lig_sim_create(m, &g, &o, &s));
  return SimPtr(s);
}

inline std::vector<lig_row> rows(const lig_sim* s) {
  size_t len = 0;
  check(lig_sim_rows(s, nullptr, 0, &len));
  std::vector<lig_row> out(len);
  check(lig_sim_rows(s, out.data(), out.size(), &len));
  return out;
}

inline std::vector<double> field(const lig_sim* s, lig_field f) {
  size_t len = 0;
  check(lig_sim_field(s, f, nullptr, 0, &len));
  std::vector<double> out(len);
  check(lig_sim_field(s, f, out.data(), out.size(), &len));
  return out;
}

}  // namespace ligsim
