#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "relfluid.hpp"

namespace lig {

// Centered three-point derivative; one-sided second order at both ends.
std::vector<double> three_point_derivative(std::span<const double> f, double dx);

// First index i, scanning upward, with f'(i) f'(i+1) < 0.
std::optional<std::size_t> frw_border_index(std::span<const double> v, double dx);
// First index i, scanning downward, with |f'(i)| > threshold.
std::optional<std::size_t> tov_border_index(std::span<const double> v, double dx,
                                            double threshold);

double total_variation(std::span<const double> f);

// dx * sum_{first <= i <= last} |num_i - ref_i|.
double one_norm_error(std::span<const double> num, std::span<const double> ref, std::size_t first,
                      std::size_t last, double dx);

// rates[k] = log2(e[k-1] / e[k]); rates[0] is NaN.
std::vector<double> convergence_rates(std::span<const double> errors);

struct Remap {
  std::vector<double> values;
  double scale;
  double b2_min;
};

// Maps field b1 affinely onto the [min, max] range of b2.
Remap b_affine_remap(std::span<const double> b1, std::span<const double> b2);

double coordinate_time_map(double t_bar_1, double psi0);
// Squared derivative of the inverse time map, the stretch between the two B fields.
double time_map_scale(double t_bar_2, double psi0);

// Linear interpolation of (xs, ys) at x; xs increasing, clamped at the ends.
double interpolate(std::span<const double> xs, std::span<const double> ys, double x);

struct Bump {
  double tc;
  double ht;
  double xc;
  double hx;
  double value(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;
};

// Coordinate speeds of the outgoing (+) and ingoing (-) sound fronts.
double sound_speed_plus(double A, double B, double v, const Eos& eos);
double sound_speed_minus(double A, double B, double v, const Eos& eos);

struct Cones {
  double light_left = 0.0;
  double light_right = 0.0;
  double sound_left = 0.0;
  double sound_right = 0.0;
  // Bit k set once front k (in the order above) has reached a domain boundary.
  unsigned frozen = 0;
};

}  // namespace lig
