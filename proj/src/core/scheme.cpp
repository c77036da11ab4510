#include "scheme.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace lig {

Conserved metric_flux(const MetricPoint& m, Fluid f, const Eos& eos) {
  const Stress t = minkowski_stress(f, eos, 1.0);
  const double w = m.light_speed();
  return {w * t.t01, w * t.t11};
}

Conserved godunov_cell_update(Conserved uc, Fluid fc, Fluid left_star, Fluid right_star,
                              const MetricPoint& left_edge, const MetricPoint& right_edge,
                              double dt, double dx, const Eos& eos) {
  const double k = 2.0 * dt / dx;
  const Conserved flc = metric_flux(left_edge, fc, eos);
  const Conserved fls = metric_flux(left_edge, left_star, eos);
  const Conserved frs = metric_flux(right_edge, right_star, eos);
  const Conserved frc = metric_flux(right_edge, fc, eos);
  const Conserved ul{uc.u0 - k * (flc.u0 - fls.u0), uc.u1 - k * (flc.u1 - fls.u1)};
  const Conserved ur{uc.u0 - k * (frs.u0 - frc.u0), uc.u1 - k * (frs.u1 - frc.u1)};
  return {0.5 * (ul.u0 + ur.u0), 0.5 * (ul.u1 + ur.u1)};
}

Conserved source_G(const MetricPoint& m, Fluid f, double x, const Eos& eos) {
  const double sig = eos.sigma();
  const double v2 = f.v * f.v;
  const double pre = -0.5 * m.light_speed() * (1.0 + sig) / ((1.0 - f.v) * (1.0 + f.v)) * f.rho / x;
  const double rx2 = f.rho * x * x;
  const double g0 = pre * f.v * (2.0 * (1.0 / m.A + 1.0) - kKappa / m.A * (1.0 - sig) * rx2);
  const double g1 =
      pre * (4.0 * v2 + (1.0 / m.A - 1.0) * (1.0 + v2) + kKappa / m.A * (sig - v2) * rx2);
  return {g0, g1};
}

Conserved source_g(const MetricPoint& m, Fluid f, double x, const Eos& eos) {
  const Stress t = minkowski_stress(f, eos, x);
  const double w = m.light_speed();
  const double g0 = -2.0 / x * w * t.t01;
  const double g1 = -0.5 * w *
                    (4.0 * t.t11 / x + (1.0 / m.A - 1.0) * (t.t00 - t.t11) / x +
                     2.0 * kKappa * x * (t.t00 * t.t11 - t.t01 * t.t01) / m.A - 4.0 * x * t.t22);
  return {g0, g1};
}

namespace {

MetricPoint average(const MetricPoint& a, const MetricPoint& b) {
  return {0.5 * (a.A + b.A), 0.5 * (a.B + b.B)};
}

Cell ode_cell(Conserved ubar, const MetricPoint& left_edge, const MetricPoint& right_edge, double x,
              double dt, const Eos& eos) {
  try {
    const Fluid f = from_conserved(ubar, eos);
    const Conserved g = source_G(average(left_edge, right_edge), f, x, eos);
    const Conserved u{ubar.u0 + g.u0 * dt, ubar.u1 + g.u1 * dt};
    return {u, from_conserved(u, eos)};
  } catch (const Error& e) {
    throw Error(Errc::nonphysical_state, std::string("ODE step left the physical range: ") + e.what());
  }
}

}  // namespace

Conserved ode_step(Conserved ubar, const MetricPoint& left_edge, const MetricPoint& right_edge,
                   double x, double dt, const Eos& eos) {
  return ode_cell(ubar, left_edge, right_edge, x, dt, eos).u;
}

Simulation::Simulation(const Model& model, const Grid& grid, const SimOptions& opt)
    : model_(model), grid_(grid), opt_(opt), t_(model.start_time()), Bt_(model.match_data().B0) {
  if (grid.n < 3 || !(grid.r_max > grid.r_min)) {
    throw Error(Errc::invalid_argument, "grid needs n >= 3 and r_max > r_min");
  }
  if (!(grid.x(0) > 0.0)) {
    throw Error(Errc::invalid_argument, "left ghost cell must sit at a positive radius");
  }
  if (model.matched()) {
    const double r0 = model.match_data().r0;
    if (!(r0 > grid.r_min && r0 < grid.r_max)) {
      throw Error(Errc::invalid_argument, "r0 must lie inside (r_min, r_max)");
    }
  }
  const int n = grid.n;
  cells_.resize(n + 2);
  edges_.resize(n + 2);
  star_.resize(n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const Fluid f = model.initial(grid.x(i)).fluid;
    cells_[i] = {to_conserved(f, eos()), f};
  }
  update_mass_metric();
  double origin = opt.cone_origin;
  if (std::isnan(origin)) origin = model.matched() ? model.match_data().r0 : 0.5 * (grid.r_min + grid.r_max);
  cones_ = {origin, origin, origin, origin, 0u};
}

std::vector<double> Simulation::cell_x() const {
  std::vector<double> xs(n());
  for (int i = 1; i <= n(); ++i) xs[i - 1] = grid_.x(i);
  return xs;
}

std::vector<double> Simulation::edge_x() const {
  std::vector<double> xs(n() + 1);
  for (int i = 1; i <= n() + 1; ++i) xs[i - 1] = grid_.edge(i);
  return xs;
}

std::vector<double> Simulation::velocities() const {
  std::vector<double> v(n());
  for (int i = 1; i <= n(); ++i) v[i - 1] = cells_[i].f.v;
  return v;
}

MetricPoint Simulation::center_metric(int i) const {
  return average({edges_[i].A, edges_[i].B}, {edges_[i + 1].A, edges_[i + 1].B});
}

std::vector<Row> Simulation::rows() const {
  std::vector<Row> out;
  out.reserve(n());
  for (int i = 1; i <= n(); ++i) {
    const MetricPoint m = center_metric(i);
    const double x = grid_.x(i);
    out.push_back({x, cells_[i].f.rho, cells_[i].f.v, m.A, m.B, 0.5 * x * (1.0 - m.A),
                   m.light_speed(), 1.0 - m.A});
  }
  return out;
}

double Simulation::cfl_dt() const {
  double w = 0.0;
  for (int i = 1; i <= n() + 1; ++i) w = std::max(w, std::sqrt(edges_[i].A * edges_[i].B));
  return dx() / (2.0 * w);
}

StepReport Simulation::step(double t_end) {
  const double cfl = cfl_dt();
  const double remaining = t_end - t_;
  if (!(remaining > 0.0)) throw Error(Errc::invalid_argument, "step requested past t_end");
  const bool last = cfl >= remaining;
  const double dt = last ? remaining : cfl;
  const int nn = n();
  const Eos& e = eos();

  StepReport rep;
  rep.dt = dt;
  rep.max_light_speed = dx() / (2.0 * cfl);

  for (int i = 1; i <= nn + 1; ++i) {
    const WaveFan fan = solve_middle_state(cells_[i - 1].f, cells_[i].f, e, opt_.riemann);
    ++rep.regions[static_cast<int>(fan.region) - 1];
    star_[i] = sample(fan, 0.0, e);
  }

  accumulate_probes(dt);
  if (opt_.track_cones) advance_cones(dt);

  std::vector<Cell> next(cells_);
  for (int i = 1; i <= nn; ++i) {
    const MetricPoint ml{edges_[i].A, edges_[i].B};
    const MetricPoint mr{edges_[i + 1].A, edges_[i + 1].B};
    const Conserved ubar = godunov_cell_update(cells_[i].u, cells_[i].f, star_[i], star_[i + 1],
                                               ml, mr, dt, dx(), e);
    next[i] = ode_cell(ubar, ml, mr, grid_.x(i), dt, e);
  }
  cells_.swap(next);
  t_ = last ? t_end : t_ + dt;

  refresh_left();
  refresh_right();
  update_mass_metric();

  if (model_.has_tov_side() && !chopping_) {
    const auto b = tov_border_cell();
    if (b && *b == nn) {
      rep.boundary_hit = true;
    } else if (b) {
      const double x = grid_.x(*b);
      Bt_ = center_metric(*b).B * std::pow(x, -tov_exponent(e));
      rep.rematched = true;
    }
  }
  rep.t = t_;
  return rep;
}

void Simulation::run(double t_end, const Hook& hook) {
  while (t_ < t_end) {
    const StepReport rep = step(t_end);
    if (hook) hook(*this, rep);
  }
}

void Simulation::refresh_left() {
  const Fluid f = model_.left_side(t_, grid_.x(0)).fluid;
  cells_[0] = {to_conserved(f, eos()), f};
}

void Simulation::refresh_right() {
  if (chopping_) return;
  const int j = n() + 1;
  const Fluid f = model_.right_side(t_, grid_.x(j), Bt_).fluid;
  cells_[j] = {to_conserved(f, eos()), f};
}

void Simulation::update_mass_metric() {
  const int nn = n();
  const double h = dx();
  const ModelPoint anchor = model_.left_side(t_, grid_.edge(1));
  edges_[1] = {anchor.metric.A, anchor.metric.B, anchor.mass};
  bool horizon = edges_[1].A <= opt_.horizon_A;
  for (int i = 2; i <= nn + 1; ++i) {
    const int k = i - 1;
    const double xk = grid_.edge(k);
    const double u0 = 0.5 * (cells_[k - 1].u.u0 + cells_[k].u.u0);
    edges_[i].M = edges_[i - 1].M + 0.5 * kKappa * u0 * xk * xk * h;
    edges_[i].A = 1.0 - 2.0 * edges_[i].M / grid_.edge(i);
    horizon = horizon || edges_[i].A <= opt_.horizon_A;
  }
  if (horizon) {
    throw Error(Errc::horizon_encountered, "metric component A reached the horizon threshold");
  }
  double tau = 0.0;
  for (int i = 2; i <= nn + 1; ++i) {
    const int k = i - 1;
    const double xk = grid_.edge(k);
    const double ak = edges_[k].A;
    const Conserved avg{0.5 * (cells_[k - 1].u.u0 + cells_[k].u.u0),
                        0.5 * (cells_[k - 1].u.u1 + cells_[k].u.u1)};
    const double t11 = minkowski_stress(from_conserved(avg, eos()), eos(), xk).t11;
    tau += ((1.0 / ak - 1.0) / xk + kKappa * xk * t11 / ak) * h;
    edges_[i].B = edges_[1].B * std::exp(tau);
  }
  edges_[0] = edges_[1];
}

std::optional<int> Simulation::frw_border_cell() const {
  const auto v = velocities();
  const auto i = frw_border_index(v, dx());
  if (!i) return std::nullopt;
  return static_cast<int>(*i) + 1;
}

std::optional<int> Simulation::tov_border_cell() const {
  const auto v = velocities();
  const auto i = tov_border_index(v, dx(), opt_.tov_threshold);
  if (!i) return std::nullopt;
  return static_cast<int>(*i) + 1;
}

std::pair<double, double> Simulation::black_hole_number() const {
  double mu = -1.0;
  double r = grid_.edge(1);
  for (int i = 1; i <= n() + 1; ++i) {
    const double x = grid_.edge(i);
    const double m = 2.0 * edges_[i].M / x;
    if (m > mu) {
      mu = m;
      r = x;
    }
  }
  return {mu, r};
}

void Simulation::rematch_tov_timescale() {
  const auto b = tov_border_cell();
  if (!b || *b == n()) {
    throw Error(Errc::border_not_found, "no uncontaminated TOV border inside the grid");
  }
  Bt_ = center_metric(*b).B * std::pow(grid_.x(*b), -tov_exponent(eos()));
}

double Simulation::right_ghost_B() const {
  return Bt_ * std::pow(grid_.x(n() + 1), tov_exponent(eos()));
}

void Simulation::chop_right() {
  if (n() - 1 < std::max(opt_.min_cells, 3)) {
    throw Error(Errc::grid_exhausted, "too few cells remain to keep chopping");
  }
  // The last interior cell becomes the right ghost and keeps its current state.
  cells_.pop_back();
  edges_.pop_back();
  star_.pop_back();
  grid_.r_max -= grid_.dx();
  --grid_.n;
  chopping_ = true;
}

void Simulation::advance_cones(double dt) {
  const int nn = n();
  const double h = dx();
  const double lo = grid_.edge(1);
  const double hi = grid_.edge(nn + 1);
  auto state = [&](double r, double& v, double& a, double& b) {
    double s = (r - grid_.x(0)) / h;
    int j = std::clamp(static_cast<int>(std::floor(s)), 0, nn);
    double w = s - j;
    v = (1.0 - w) * cells_[j].f.v + w * cells_[j + 1].f.v;
    s = (r - lo) / h;
    j = std::clamp(static_cast<int>(std::floor(s)), 0, nn - 1) + 1;
    w = std::clamp(s - (j - 1), 0.0, 1.0);
    a = (1.0 - w) * edges_[j].A + w * edges_[j + 1].A;
    b = (1.0 - w) * edges_[j].B + w * edges_[j + 1].B;
  };
  double* fronts[4] = {&cones_.light_left, &cones_.light_right, &cones_.sound_left,
                       &cones_.sound_right};
  for (int k = 0; k < 4; ++k) {
    if (cones_.frozen & (1u << k)) continue;
    double v, a, b;
    state(*fronts[k], v, a, b);
    double s = 0.0;
    switch (k) {
      case 0: s = -std::sqrt(a * b); break;
      case 1: s = std::sqrt(a * b); break;
      case 2: s = sound_speed_minus(a, b, v, eos()); break;
      default: s = sound_speed_plus(a, b, v, eos()); break;
    }
    double r = *fronts[k] + s * dt;
    if (r <= lo || r >= hi) {
      r = std::clamp(r, lo, hi);
      cones_.frozen |= 1u << k;
    }
    *fronts[k] = r;
  }
}

int Simulation::add_probe(const Bump& phi) {
  if (!(phi.ht > 0.0) || !(phi.hx > 0.0)) {
    throw Error(Errc::invalid_argument, "test function widths must be positive");
  }
  const double lo = grid_.edge(1);
  const double hi = grid_.edge(n() + 1);
  const bool outside = phi.xc + phi.hx <= lo || phi.xc - phi.hx >= hi;
  const bool inside = phi.xc - phi.hx >= lo && phi.xc + phi.hx <= hi;
  if (!outside && !inside) {
    throw Error(Errc::support_violation, "test function support crosses the domain boundary");
  }
  const Residual s = slice_term(phi);
  probes_.push_back({phi, {-s.e0, -s.e1}});
  return static_cast<int>(probes_.size()) - 1;
}

Residual Simulation::slice_term(const Bump& phi) const {
  Residual r{0.0, 0.0};
  for (int i = 1; i <= n(); ++i) {
    const double p = phi.value(t_, grid_.x(i));
    if (p == 0.0) continue;
    r.e0 += cells_[i].u.u0 * p * dx();
    r.e1 += cells_[i].u.u1 * p * dx();
  }
  return r;
}

Residual Simulation::residual(int id) const {
  if (id < 0 || id >= static_cast<int>(probes_.size())) {
    throw Error(Errc::invalid_argument, "unknown residual probe");
  }
  const Probe& p = probes_[id];
  const Residual s = slice_term(p.phi);
  return {p.sum.e0 + s.e0, p.sum.e1 + s.e1};
}

void Simulation::accumulate_probes(double dt) {
  if (probes_.empty()) return;
  const double tm = t_ + 0.5 * dt;
  const double w = dx() * dt;
  for (Probe& p : probes_) {
    if (std::fabs(tm - p.phi.tc) >= p.phi.ht) continue;
    for (int i = 1; i <= n(); ++i) {
      const double x = grid_.x(i);
      if (std::fabs(x - p.phi.xc) >= p.phi.hx) continue;
      const MetricPoint m = center_metric(i);
      const Conserved f = metric_flux(m, cells_[i].f, eos());
      const Conserved g = source_g(m, cells_[i].f, x, eos());
      const double ph = p.phi.value(tm, x);
      const double pt = p.phi.dt(tm, x);
      const double px = p.phi.dx(tm, x);
      p.sum.e0 += w * (-cells_[i].u.u0 * pt - f.u0 * px - g.u0 * ph);
      p.sum.e1 += w * (-cells_[i].u.u1 * pt - f.u1 * px - g.u1 * ph);
    }
  }
}

}  // namespace lig
