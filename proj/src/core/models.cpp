#include "models.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"

namespace lig {

double MetricPoint::light_speed() const { return std::sqrt(A * B); }

double gamma_tov(const Eos& eos) {
  const double sig = eos.sigma();
  return sig / (2.0 * kPi * (1.0 + 6.0 * sig + sig * sig));
}

double tov_exponent(const Eos& eos) { return 4.0 * eos.sigma() / (1.0 + eos.sigma()); }

ModelPoint frw1_state(double t_bar, double r_bar) {
  const double xi = r_bar / t_bar;
  if (!(std::fabs(xi) < 1.0)) {
    throw Error(Errc::superluminal_coordinate, "FRW-1 chart requires |r/t| < 1");
  }
  const double v = xi / (1.0 + std::sqrt((1.0 - xi) * (1.0 + xi)));
  const double w = (1.0 - v) * (1.0 + v);
  return {{3.0 * v * v / (kKappa * r_bar * r_bar), v}, {w, 1.0 / w}, 0.5 * r_bar * v * v};
}

FrwScale frw_comoving(double t) {
  if (t == 0.0) throw Error(Errc::outside_domain, "the FRW solution is singular at t = 0");
  return {3.0 / (4.0 * kKappa * t * t), std::sqrt(std::fabs(t))};
}

double frw2_time(double t_bar, double r_bar, double psi0) {
  const double p2 = psi0 * psi0;
  const double t2 = t_bar * t_bar;
  const double disc = t2 * t2 - r_bar * r_bar * p2 * p2;
  if (!(disc >= 0.0) || !(t_bar > 0.0)) {
    throw Error(Errc::outside_domain, "FRW-2 chart requires t^4 >= r^2 psi0^4");
  }
  return (t2 + std::sqrt(disc)) / (2.0 * p2);
}

ModelPoint frw2_state(double t_bar, double r_bar, double psi0) {
  const double t = frw2_time(t_bar, r_bar, psi0);
  const double v = r_bar / (2.0 * t);
  const double psi = psi0 * std::sqrt(t / (4.0 * t * t + r_bar * r_bar));
  const double w = (1.0 - v) * (1.0 + v);
  return {{3.0 / (4.0 * kKappa * t * t), v}, {w, 1.0 / (psi * psi * w)}, 0.5 * r_bar * v * v};
}

ModelPoint tov_state(double r_bar, double B0, const Eos& eos) {
  const double g = gamma_tov(eos);
  return {{g / (r_bar * r_bar), 0.0},
          {1.0 - 8.0 * kPi * g, B0 * std::pow(r_bar, tov_exponent(eos))},
          4.0 * kPi * g * r_bar};
}

double integrating_factor_check(double t, double r_bar, IntegratingFactor which, double h,
                                double psi0) {
  auto psi = [&](double tt, double rr) {
    switch (which) {
      case IntegratingFactor::constant:
        return psi0;
      case IntegratingFactor::dynamical:
        return psi0 * std::sqrt(tt / (4.0 * tt * tt + rr * rr));
      case IntegratingFactor::perturbed:
        return psi0 * std::sqrt(tt / (4.0 * tt * tt + rr * rr)) * (1.0 + 0.01 * rr);
    }
    return psi0;
  };
  auto p = [&](double tt, double rr) { return psi(tt, rr) * (1.0 - rr * rr / (4.0 * tt * tt)); };
  auto q = [&](double tt, double rr) { return psi(tt, rr) * rr / (2.0 * tt); };
  const double dp = (p(t, r_bar + h) - p(t, r_bar - h)) / (2.0 * h);
  const double dq = (q(t + h, r_bar) - q(t - h, r_bar)) / (2.0 * h);
  return dp - dq;
}

MatchData match(const ModelSpec& spec) {
  MatchData m;
  const double sig = spec.eos.sigma();
  switch (spec.kind) {
    case ModelKind::frw1:
      m.t0 = spec.t0;
      m.r0 = std::numeric_limits<double>::quiet_NaN();
      return m;
    case ModelKind::frw2:
      m.t0 = spec.t0;
      m.r0 = std::numeric_limits<double>::quiet_NaN();
      m.psi0 = spec.psi0 > 0.0 ? spec.psi0 : std::sqrt(2.0 * spec.t0);
      return m;
    case ModelKind::tov:
      m.t0 = spec.t0;
      m.r0 = std::numeric_limits<double>::quiet_NaN();
      m.B0 = spec.B0;
      return m;
    case ModelKind::matched_frw1_tov:
    case ModelKind::matched_frw2_tov:
      break;
  }
  if (!(spec.r0 > 0.0)) throw Error(Errc::invalid_argument, "r0 must be positive");
  m.r0 = spec.r0;
  m.v0 = std::sqrt(4.0 * sig / (1.0 + 6.0 * sig + sig * sig));
  if (spec.reversed) m.v0 = -m.v0;
  const double w0 = (1.0 - m.v0) * (1.0 + m.v0);
  m.B0 = std::pow(spec.r0, -tov_exponent(spec.eos)) / w0;
  if (spec.kind == ModelKind::matched_frw1_tov) {
    m.t0 = spec.r0 * (1.0 + m.v0 * m.v0) / (2.0 * m.v0);
  } else {
    const double t0 = spec.r0 / (2.0 * m.v0);
    m.psi0 = std::sqrt((4.0 * t0 * t0 + spec.r0 * spec.r0) / t0);
    m.t0 = 0.5 * m.psi0 * m.psi0;
  }
  return m;
}

Model::Model(const ModelSpec& spec) : spec_(spec) {
  const bool frw = spec.kind != ModelKind::tov;
  if (frw && std::fabs(spec.eos.sigma() - 1.0 / 3.0) > 1e-12) {
    throw Error(Errc::invalid_argument, "the FRW closed forms exist only for sigma = 1/3");
  }
  if (spec.reversed && spec.kind != ModelKind::matched_frw1_tov) {
    throw Error(Errc::invalid_argument, "time reversal is defined for the FRW-1/TOV match only");
  }
  if (spec.kind == ModelKind::tov && !(spec.B0 > 0.0)) {
    throw Error(Errc::invalid_argument, "B0 must be positive");
  }
  if ((spec.kind == ModelKind::frw1 || spec.kind == ModelKind::frw2) && !(spec.t0 > 0.0)) {
    throw Error(Errc::invalid_argument, "t0 must be positive for the FRW models");
  }
  match_ = match(spec);
}

bool Model::matched() const {
  return spec_.kind == ModelKind::matched_frw1_tov || spec_.kind == ModelKind::matched_frw2_tov;
}

bool Model::has_tov_side() const { return matched() || spec_.kind == ModelKind::tov; }

ModelPoint Model::left_side(double t_bar, double r_bar) const {
  switch (spec_.kind) {
    case ModelKind::frw1:
    case ModelKind::matched_frw1_tov:
      return frw1_state(t_bar, r_bar);
    case ModelKind::frw2:
    case ModelKind::matched_frw2_tov:
      return frw2_state(t_bar, r_bar, match_.psi0);
    case ModelKind::tov:
      return tov_state(r_bar, match_.B0, spec_.eos);
  }
  throw Error(Errc::invalid_argument, "unknown model");
}

ModelPoint Model::right_side(double t_bar, double r_bar, double B0) const {
  if (has_tov_side()) return tov_state(r_bar, B0, spec_.eos);
  return left_side(t_bar, r_bar);
}

ModelPoint Model::right_side(double t_bar, double r_bar) const {
  return right_side(t_bar, r_bar, match_.B0);
}

ModelPoint Model::initial(double r_bar) const {
  if (matched() && r_bar >= match_.r0) return right_side(match_.t0, r_bar);
  return left_side(match_.t0, r_bar);
}

ModelPoint Model::exact(double t_bar, double r_bar) const {
  if (matched()) {
    if (t_bar != match_.t0) {
      throw Error(Errc::invalid_argument, "matched models have closed forms only at t0");
    }
    return initial(r_bar);
  }
  return left_side(t_bar, r_bar);
}

double units_convert(double value, Unit to) {
  switch (to) {
    case Unit::length_km:
      return kGravKmPerMsun * value;
    case Unit::time_sec:
      return kGravKmPerMsun / kLightKmPerSec * value;
    case Unit::density_msun_per_km3:
      return value / (kGravKmPerMsun * kGravKmPerMsun * kGravKmPerMsun);
  }
  return value;
}

}  // namespace lig
