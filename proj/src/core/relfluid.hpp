#pragma once

#include <numbers>
#include <utility>

namespace lig {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kKappa = 8.0 * kPi;

// Isothermal equation of state p = sigma * rho, with c = 1.
class Eos {
 public:
  Eos() : Eos(1.0 / 3.0) {}
  explicit Eos(double sigma);

  double sigma() const { return sigma_; }
  double sound() const { return sound_; }
  double K() const { return K_; }
  // sqrt(K/2) and sqrt(2K), the two scale factors of the invariants.
  double half_root() const { return half_root_; }
  double double_root() const { return double_root_; }

 private:
  double sigma_;
  double sound_;
  double K_;
  double half_root_;
  double double_root_;
};

struct Fluid {
  double rho;
  double v;
};

struct Conserved {
  double u0;
  double u1;
};

struct Invariants {
  double r;
  double s;
};

struct Stress {
  double t00;
  double t01;
  double t11;
  double t22;
};

enum class Branch { r, s };

Conserved to_conserved(Fluid f, const Eos& eos);
// Throws Errc::negative_discriminant or Errc::nonpositive_density.
Fluid from_conserved(Conserved u, const Eos& eos);

Invariants to_invariants(Fluid f, const Eos& eos);
Fluid from_invariants(Invariants ri, const Eos& eos);

double partial_density(double invariant, Branch which, double v, const Eos& eos);

std::pair<double, double> eigenvalues(Fluid f, const Eos& eos);
double v_from_lambda1(double lambda, const Eos& eos);
double v_from_lambda2(double lambda, const Eos& eos);

double lorentz_compose(double v, double w);

Stress minkowski_stress(Fluid f, const Eos& eos, double x);

// Flux of the conservation law without the metric factor sqrt(AB).
inline Conserved flat_flux(const Stress& t) { return {t.t01, t.t11}; }

bool is_valid(Fluid f);

}  // namespace lig
