#include "relfluid.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace lig {

Eos::Eos(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw Error(Errc::invalid_argument, "sigma must lie in (0, 1), got " + std::to_string(sigma));
  }
  sound_ = std::sqrt(sigma);
  K_ = 2.0 * sigma / ((1.0 + sigma) * (1.0 + sigma));
  half_root_ = std::sqrt(K_ / 2.0);
  double_root_ = std::sqrt(2.0 * K_);
}

bool is_valid(Fluid f) { return f.rho > 0.0 && std::isfinite(f.rho) && std::fabs(f.v) < 1.0; }

Conserved to_conserved(Fluid f, const Eos& eos) {
  const double sig = eos.sigma();
  const double w = (1.0 - f.v) * (1.0 + f.v);
  return {f.rho * (1.0 + sig * f.v * f.v) / w, f.rho * (1.0 + sig) * f.v / w};
}

Fluid from_conserved(Conserved u, const Eos& eos) {
  if (!(u.u0 > 0.0)) {
    throw Error(Errc::nonpositive_density, "u0 must be positive");
  }
  const double sig = eos.sigma();
  const double a = (1.0 + sig) * u.u0;
  const double b = 2.0 * std::sqrt(sig) * std::fabs(u.u1);
  const double disc = (a - b) * (a + b);
  if (!(disc >= 0.0)) {
    throw Error(Errc::negative_discriminant, "conserved state outside the physical range");
  }
  if (u.u1 == 0.0) {
    return {u.u0, 0.0};
  }
  // Minus root of the quadratic, rationalized to avoid cancellation when u1 is small.
  const double v = 2.0 * u.u1 / (a + std::sqrt(disc));
  const double rho = u.u0 * (1.0 - v) * (1.0 + v) / (1.0 + sig * v * v);
  if (!(rho > 0.0) || !(std::fabs(v) < 1.0)) {
    throw Error(Errc::nonpositive_density, "conserved state maps to a nonpositive density");
  }
  return {rho, v};
}

Invariants to_invariants(Fluid f, const Eos& eos) {
  const double a = std::atanh(f.v);
  const double b = eos.half_root() * std::log(f.rho);
  return {a - b, a + b};
}

Fluid from_invariants(Invariants ri, const Eos& eos) {
  return {std::exp((ri.s - ri.r) / eos.double_root()), std::tanh(0.5 * (ri.s + ri.r))};
}

double partial_density(double invariant, Branch which, double v, const Eos& eos) {
  const double k = std::sqrt(2.0 / eos.K());
  const double d = invariant - std::atanh(v);
  return which == Branch::r ? std::exp(-k * d) : std::exp(k * d);
}

std::pair<double, double> eigenvalues(Fluid f, const Eos& eos) {
  const double c = eos.sound();
  return {(f.v - c) / (1.0 - c * f.v), (f.v + c) / (1.0 + c * f.v)};
}

double v_from_lambda1(double lambda, const Eos& eos) {
  const double c = eos.sound();
  return (lambda + c) / (1.0 + c * lambda);
}

double v_from_lambda2(double lambda, const Eos& eos) {
  const double c = eos.sound();
  return (lambda - c) / (1.0 - c * lambda);
}

double lorentz_compose(double v, double w) { return (v + w) / (1.0 + v * w); }

Stress minkowski_stress(Fluid f, const Eos& eos, double x) {
  const double sig = eos.sigma();
  const double v2 = f.v * f.v;
  const double w = (1.0 - f.v) * (1.0 + f.v);
  return {(1.0 + sig * v2) * f.rho / w, (1.0 + sig) * f.v * f.rho / w, (v2 + sig) * f.rho / w,
          sig * f.rho / (x * x)};
}

}  // namespace lig
