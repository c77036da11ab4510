#pragma once

#include <stdexcept>
#include <string>

namespace lig {

enum class Errc {
  invalid_argument = 1,
  negative_discriminant,
  nonpositive_density,
  no_convergence,
  nonphysical_input,
  superluminal_coordinate,
  outside_domain,
  horizon_encountered,
  border_not_found,
  grid_exhausted,
  nonphysical_state,
  shape_mismatch,
  degenerate_field,
  support_violation,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lig
