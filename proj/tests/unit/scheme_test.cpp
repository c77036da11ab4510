#include <cmath>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "scheme.hpp"

using namespace lig;

namespace {

Model frw1() { return Model(ModelSpec{}); }

Model tov() {
  ModelSpec s;
  s.kind = ModelKind::tov;
  return Model(s);
}

Model matched() {
  ModelSpec s;
  s.kind = ModelKind::matched_frw1_tov;
  return Model(s);
}

}  // namespace

TEST_CASE("Godunov update leaves a constant state alone") {
  const Eos e;
  const Fluid f{0.3, 0.2};
  const Conserved u = to_conserved(f, e);
  const MetricPoint m{0.8, 1.3};
  const Conserved out = godunov_cell_update(u, f, f, f, m, m, 0.01, 0.1, e);
  CHECK(out.u0 == doctest::Approx(u.u0).epsilon(1e-15));
  CHECK(out.u1 == doctest::Approx(u.u1).epsilon(1e-15));
}

TEST_CASE("Godunov update is conservative across a uniform metric") {
  const Eos e;
  const Fluid c{0.3, 0.1};
  const Fluid ls{0.35, 0.05};
  const Fluid rs{0.28, 0.15};
  const MetricPoint m{1.0, 1.0};
  const double dt = 0.01, dx = 0.1;
  const Conserved u = to_conserved(c, e);
  const Conserved out = godunov_cell_update(u, c, ls, rs, m, m, dt, dx, e);
  const Conserved fl = metric_flux(m, ls, e);
  const Conserved fr = metric_flux(m, rs, e);
  CHECK(out.u0 == doctest::Approx(u.u0 - dt / dx * (fr.u0 - fl.u0)));
  CHECK(out.u1 == doctest::Approx(u.u1 - dt / dx * (fr.u1 - fl.u1)));
}

TEST_CASE("source terms") {
  const Eos e;
  const MetricPoint m{0.7, 1.4};
  CHECK(source_G(m, {0.01, 0.0}, 3.0, e).u0 == 0.0);
  CHECK(source_g(m, {0.01, 0.0}, 3.0, e).u0 == 0.0);
  // Flat space with vanishing density carries no source.
  const Conserved flat = source_G({1.0, 1.0}, {1e-300, 0.0}, 2.0, e);
  CHECK(std::fabs(flat.u0) < 1e-290);
  CHECK(std::fabs(flat.u1) < 1e-290);
}

TEST_CASE("ODE step rejects a nonphysical increment") {
  const Eos e;
  const MetricPoint m{0.5, 1.0};
  const Conserved u = to_conserved({0.05, 0.9}, e);
  try {
    (void)ode_step(u, m, m, 0.5, 50.0, e);
    FAIL("expected a nonphysical state");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::nonphysical_state);
  }
}

TEST_CASE("CFL step uses the largest edge light speed") {
  const Simulation sim(tov(), {3.0, 7.0, 65});
  double w = 0.0;
  for (const Edge& ed : sim.edges()) w = std::max(w, std::sqrt(ed.A * ed.B));
  CHECK(sim.cfl_dt() == doctest::Approx(sim.dx() / (2.0 * w)));
}

TEST_CASE("initial metric integrates the sampled density") {
  const Simulation sim(frw1(), {3.0, 7.0, 1025});
  const auto rows = sim.rows();
  const Model m = frw1();
  for (std::size_t i = 0; i < rows.size(); i += 128) {
    const ModelPoint p = m.exact(15.0, rows[i].r);
    CHECK(std::fabs(rows[i].A - p.metric.A) < 1e-3);
    CHECK(std::fabs(rows[i].B - p.metric.B) < 1e-3);
  }
}

TEST_CASE("steps stop exactly at t_end") {
  Simulation sim(frw1(), {3.0, 7.0, 65});
  const double t_end = sim.t() + 0.05;
  int steps = 0;
  sim.run(t_end, [&](const Simulation&, const StepReport&) { ++steps; });
  CHECK(sim.t() == t_end);
  CHECK(steps >= 2);
  CHECK_THROWS_AS(sim.step(t_end), Error);
}

TEST_CASE("static TOV stays static to O(dx)") {
  double prev = 0.0;
  for (int n : {33, 65}) {
    Simulation sim(tov(), {3.0, 7.0, n});
    const auto r0 = sim.rows();
    sim.run(sim.t() + 0.25);
    const auto r1 = sim.rows();
    double err = 0.0;
    for (std::size_t i = 0; i < r0.size(); ++i) err += std::fabs(r1[i].rho - r0[i].rho) * sim.dx();
    CHECK(err < 1e-3);
    if (prev > 0.0) CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("runs are deterministic") {
  Simulation a(matched(), {3.0, 7.0, 129});
  Simulation b(matched(), {3.0, 7.0, 129});
  a.run(a.t() + 0.2);
  b.run(b.t() + 0.2);
  const auto ra = a.rows();
  const auto rb = b.rows();
  REQUIRE(ra.size() == rb.size());
  bool same = true;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    same = same && ra[i].rho == rb[i].rho && ra[i].v == rb[i].v && ra[i].B == rb[i].B;
  }
  CHECK(same);
}

TEST_CASE("chopping shrinks the grid until it is exhausted") {
  SimOptions opt;
  opt.min_cells = 8;
  Simulation sim(matched(), {3.0, 7.0, 12}, opt);
  const double dx = sim.dx();
  const double r_max = sim.grid().r_max;
  sim.chop_right();
  CHECK(sim.chopping());
  CHECK(sim.n() == 11);
  CHECK(sim.dx() == doctest::Approx(dx));
  CHECK(sim.grid().r_max == doctest::Approx(r_max - dx));
  CHECK(sim.cells().size() == 13);
  for (int k = 0; k < 3; ++k) sim.chop_right();
  CHECK(sim.n() == 8);
  try {
    sim.chop_right();
    FAIL("expected grid exhaustion");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::grid_exhausted);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Simulation(frw1(), {3.0, 7.0, 2}), Error);
  CHECK_THROWS_AS(Simulation(frw1(), {7.0, 3.0, 64}), Error);
  CHECK_THROWS_AS(Simulation(matched(), {6.0, 7.0, 64}), Error);
  CHECK_THROWS_AS(Simulation(frw1(), {0.0, 1.0, 3}), Error);
}

TEST_CASE("probes reject supports that cross the boundary") {
  Simulation sim(frw1(), {3.0, 7.0, 65});
  try {
    sim.add_probe({sim.t() + 0.1, 0.05, 3.0, 0.5});
    FAIL("expected a support violation");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::support_violation);
  }
  CHECK_THROWS_AS(sim.add_probe({sim.t(), 0.0, 5.0, 0.5}), Error);
  const int outside = sim.add_probe({sim.t() + 0.1, 0.05, 9.0, 0.5});
  const int inside = sim.add_probe({sim.t() + 0.1, 0.05, 5.0, 0.5});
  sim.run(sim.t() + 0.2);
  CHECK(sim.residual(outside).e0 == 0.0);
  CHECK(std::fabs(sim.residual(inside).e0) < 1e-3);
  CHECK_THROWS_AS(sim.residual(7), Error);
}

TEST_CASE("border detectors on the initial matched profile") {
  const Simulation sim(matched(), {3.0, 7.0, 257});
  const auto fb = sim.frw_border_cell();
  REQUIRE(fb.has_value());
  CHECK(std::fabs(sim.grid().x(*fb) - 5.0) <= 2.0 * sim.dx());
  const auto tb = sim.tov_border_cell();
  REQUIRE(tb.has_value());
  const double x = sim.grid().x(*tb);
  CHECK(std::fabs(x - 5.0) < 2.0 * sim.dx());
  const auto [mu, r] = sim.black_hole_number();
  CHECK(mu == doctest::Approx(3.0 / 7.0).epsilon(1e-2));
  CHECK(r > 4.9);
}

TEST_CASE("cones move at the light and sound speeds") {
  SimOptions opt;
  opt.track_cones = true;
  Simulation sim(tov(), {3.0, 7.0, 129}, opt);
  const double t0 = sim.t();
  sim.run(t0 + 0.2);
  const Cones& c = sim.cones();
  CHECK(c.light_left < c.sound_left);
  CHECK(c.sound_left < 5.0);
  CHECK(c.sound_right > 5.0);
  CHECK(c.light_right > c.sound_right);
  CHECK(c.frozen == 0u);
}
