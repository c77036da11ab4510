#pragma once

#include "relfluid.hpp"

namespace lig {

struct MetricPoint {
  double A;
  double B;
  double light_speed() const;
};

struct ModelPoint {
  Fluid fluid;
  MetricPoint metric;
  double mass;
};

enum class ModelKind { frw1, frw2, tov, matched_frw1_tov, matched_frw2_tov };

struct ModelSpec {
  ModelKind kind = ModelKind::frw1;
  Eos eos;
  // Start time of the pure models; the matched models derive their own.
  double t0 = 15.0;
  // FRW-2 integrating-factor constant; a nonpositive value selects sqrt(2 t0).
  double psi0 = 0.0;
  // TOV time-scale constant of the pure TOV model.
  double B0 = 1.0;
  double r0 = 5.0;
  bool reversed = false;
};

struct MatchData {
  double r0 = 0.0;
  double t0 = 0.0;
  double v0 = 0.0;
  double B0 = 0.0;
  double psi0 = 1.0;
};

double gamma_tov(const Eos& eos);
double tov_exponent(const Eos& eos);

ModelPoint frw1_state(double t_bar, double r_bar);
ModelPoint frw2_state(double t_bar, double r_bar, double psi0);
ModelPoint tov_state(double r_bar, double B0, const Eos& eos);

// Comoving FRW density and scale factor for sigma = 1/3; defined for t < 0 by reflection.
struct FrwScale {
  double rho;
  double R;
};
FrwScale frw_comoving(double t);

// FRW time coordinate t(t_bar, r_bar) of the FRW-2 chart.
double frw2_time(double t_bar, double r_bar, double psi0);

enum class IntegratingFactor { constant, dynamical, perturbed };

// Central-difference residual of d/dr[Psi (1 - r^2/4t^2)] - d/dt[Psi r / 2t].
double integrating_factor_check(double t, double r_bar, IntegratingFactor which, double h,
                                double psi0 = 1.0);

MatchData match(const ModelSpec& spec);

class Model {
 public:
  explicit Model(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  const Eos& eos() const { return spec_.eos; }
  const MatchData& match_data() const { return match_; }
  double start_time() const { return match_.t0; }
  bool matched() const;
  bool has_tov_side() const;

  // Closed-form solution to the left of the interaction region.
  ModelPoint left_side(double t_bar, double r_bar) const;
  // Closed-form solution to the right of the interaction region (static TOV with the given
  // time scale for TOV-bounded models).
  ModelPoint right_side(double t_bar, double r_bar, double B0) const;
  ModelPoint right_side(double t_bar, double r_bar) const;
  // Initial profile: left side for r < r0, right side for r > r0 on matched models.
  ModelPoint initial(double r_bar) const;
  // Closed-form solution of a pure model at any time.
  ModelPoint exact(double t_bar, double r_bar) const;

 private:
  ModelSpec spec_;
  MatchData match_;
};

enum class Unit { length_km, time_sec, density_msun_per_km3 };

inline constexpr double kGravKmPerMsun = 1.47664;
inline constexpr double kLightKmPerSec = 3.0e5;

double units_convert(double value, Unit to);

}  // namespace lig
