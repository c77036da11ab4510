#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace lig {

std::vector<double> three_point_derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) {
    if (n == 2) d[0] = d[1] = (f[1] - f[0]) / dx;
    return d;
  }
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  return d;
}

std::optional<std::size_t> frw_border_index(std::span<const double> v, double dx) {
  const auto d = three_point_derivative(v, dx);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] * d[i + 1] < 0.0) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> tov_border_index(std::span<const double> v, double dx,
                                            double threshold) {
  const auto d = three_point_derivative(v, dx);
  for (std::size_t i = d.size(); i-- > 0;) {
    if (std::fabs(d[i]) > threshold) return i;
  }
  return std::nullopt;
}

double total_variation(std::span<const double> f) {
  double tv = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) tv += std::fabs(f[i] - f[i - 1]);
  return tv;
}

double one_norm_error(std::span<const double> num, std::span<const double> ref, std::size_t first,
                      std::size_t last, double dx) {
  if (num.size() != ref.size()) throw Error(Errc::shape_mismatch, "fields differ in length");
  if (num.empty() || first > last) return 0.0;
  if (last >= num.size()) throw Error(Errc::shape_mismatch, "mask exceeds the field");
  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) sum += std::fabs(num[i] - ref[i]);
  return dx * sum;
}

std::vector<double> convergence_rates(std::span<const double> errors) {
  std::vector<double> r(errors.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 1; k < errors.size(); ++k) r[k] = std::log2(errors[k - 1] / errors[k]);
  return r;
}

Remap b_affine_remap(std::span<const double> b1, std::span<const double> b2) {
  if (b1.empty() || b2.empty()) throw Error(Errc::degenerate_field, "empty field");
  const auto [min1, max1] = std::minmax_element(b1.begin(), b1.end());
  const auto [min2, max2] = std::minmax_element(b2.begin(), b2.end());
  if (!(*max1 > *min1) || !(*max2 > *min2)) {
    throw Error(Errc::degenerate_field, "remap needs fields with max > min");
  }
  Remap out;
  out.scale = (*max2 - *min2) / (*max1 - *min1);
  out.b2_min = *min2;
  out.values.reserve(b1.size());
  for (double b : b1) out.values.push_back(out.scale * (b - *min1) + *min2);
  return out;
}

double coordinate_time_map(double t_bar_1, double psi0) { return psi0 * std::sqrt(t_bar_1); }

double time_map_scale(double t_bar_2, double psi0) {
  const double q = t_bar_2 / (psi0 * psi0);
  return 4.0 * q * q;
}

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (xs.size() != ys.size() || xs.empty()) throw Error(Errc::shape_mismatch, "bad table");
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return (1.0 - w) * ys[j - 1] + w * ys[j];
}

namespace {

double bump(double z) { return std::fabs(z) < 1.0 ? std::exp(-1.0 / (1.0 - z * z)) : 0.0; }

double bump_prime(double z) {
  if (!(std::fabs(z) < 1.0)) return 0.0;
  const double w = 1.0 - z * z;
  return bump(z) * (-2.0 * z / (w * w));
}

}  // namespace

double Bump::value(double t, double x) const { return bump((t - tc) / ht) * bump((x - xc) / hx); }

double Bump::dt(double t, double x) const {
  return bump_prime((t - tc) / ht) / ht * bump((x - xc) / hx);
}

double Bump::dx(double t, double x) const {
  return bump((t - tc) / ht) * bump_prime((x - xc) / hx) / hx;
}

double sound_speed_plus(double A, double B, double v, const Eos& eos) {
  const double c = eos.sound();
  return std::sqrt(A * B) * (v + c) / (1.0 + v * c);
}

double sound_speed_minus(double A, double B, double v, const Eos& eos) {
  const double c = eos.sound();
  return std::sqrt(A * B) * (v - c) / (1.0 - v * c);
}

}  // namespace lig
