#pragma once

#include "relfluid.hpp"

namespace lig {

enum class Sign { minus, plus };
enum class WaveKind { shock, rarefaction };
enum class Region { I = 1, II = 2, III = 3, IV = 4 };

// f_minus(b) = 1 + b(1 - sqrt(1 + 2/b)) in (0, 1], f_plus(b) = 1 + b(1 + sqrt(1 + 2/b)) >= 1.
double f_pm(double beta, Sign sign);

double beta_of(double v, double vl, const Eos& eos);

struct WaveCurvePoint {
  double beta;
  double dr;
  double ds;
};

WaveCurvePoint wave_curve(int family, WaveKind kind, double beta, const Eos& eos);

// Rest-frame magnitude of a shock speed for the given f value.
double rest_shock_speed(double f, const Eos& eos);

struct Wave {
  WaveKind kind = WaveKind::rarefaction;
  double beta = 0.0;
  // For a shock lo == hi is the shock speed; for a rarefaction they are the fan edges.
  double lo = 0.0;
  double hi = 0.0;
};

struct WaveFan {
  Fluid left{};
  Fluid middle{};
  Fluid right{};
  Wave wave1;
  Wave wave2;
  Region region = Region::IV;
};

struct RiemannOptions {
  double eps = 1e-10;
  int max_iter = 200;
};

Region classify_region(Invariants ul, Invariants ur, const Eos& eos,
                       const RiemannOptions& opt = {});

// Throws Errc::no_convergence or Errc::nonphysical_input.
WaveFan solve_middle_state(Fluid ul, Fluid ur, const Eos& eos, const RiemannOptions& opt = {});

void wave_speeds(WaveFan& fan, const Eos& eos);

Fluid sample(const WaveFan& fan, double xi, const Eos& eos);
Fluid sample(Fluid ul, Fluid ur, double xi, const Eos& eos, const RiemannOptions& opt = {});

}  // namespace lig
