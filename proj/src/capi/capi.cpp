#include "lig/lig.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "error.hpp"
#include "models.hpp"
#include "riemann.hpp"
#include "scheme.hpp"

struct lig_model {
  lig::Model model;
};

struct lig_sim {
  lig::Simulation sim;
};

namespace {

thread_local std::string g_last_error;

lig_status to_status(lig::Errc c) { return static_cast<lig_status>(static_cast<int>(c)); }

template <class F>
lig_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LIG_OK;
  } catch (const lig::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LIG_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LIG_INTERNAL;
  }
}

lig_status fail(lig_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

lig::RiemannOptions riemann_options(const lig_riemann_options* opt) {
  lig::RiemannOptions o;
  if (opt) {
    o.eps = opt->eps;
    o.max_iter = opt->max_iter;
  }
  return o;
}

lig_wave to_c(const lig::Wave& w) {
  return {w.kind == lig::WaveKind::shock ? LIG_SHOCK : LIG_RAREFACTION, w.beta, w.lo, w.hi};
}

lig::Wave from_c(const lig_wave& w) {
  lig::Wave out;
  out.kind = w.kind == LIG_SHOCK ? lig::WaveKind::shock : lig::WaveKind::rarefaction;
  out.beta = w.beta;
  out.lo = w.lo;
  out.hi = w.hi;
  return out;
}

lig_point to_c(const lig::ModelPoint& p) {
  return {p.fluid.rho, p.fluid.v, p.metric.A, p.metric.B, p.mass};
}

lig::ModelKind to_kind(lig_model_kind k) {
  switch (k) {
    case LIG_FRW1:
      return lig::ModelKind::frw1;
    case LIG_FRW2:
      return lig::ModelKind::frw2;
    case LIG_TOV:
      return lig::ModelKind::tov;
    case LIG_FRW1_TOV:
      return lig::ModelKind::matched_frw1_tov;
    case LIG_FRW2_TOV:
      return lig::ModelKind::matched_frw2_tov;
  }
  throw lig::Error(lig::Errc::invalid_argument, "unknown model kind");
}

template <class T>
lig_status copy_out(const std::vector<T>& v, T* buf, size_t cap, size_t* len) {
  if (len) *len = v.size();
  if (!buf) return LIG_OK;
  if (cap < v.size()) return fail(LIG_BUFFER_TOO_SMALL, "buffer too small");
  for (size_t i = 0; i < v.size(); ++i) buf[i] = v[i];
  return LIG_OK;
}

}  // namespace

extern "C" {

const char* lig_status_name(lig_status s) {
  switch (s) {
    case LIG_OK: return "ok";
    case LIG_INVALID_ARGUMENT: return "invalid_argument";
    case LIG_NEGATIVE_DISCRIMINANT: return "negative_discriminant";
    case LIG_NONPOSITIVE_DENSITY: return "nonpositive_density";
    case LIG_NO_CONVERGENCE: return "no_convergence";
    case LIG_NONPHYSICAL_INPUT: return "nonphysical_input";
    case LIG_SUPERLUMINAL_COORDINATE: return "superluminal_coordinate";
    case LIG_OUTSIDE_DOMAIN: return "outside_domain";
    case LIG_HORIZON_ENCOUNTERED: return "horizon_encountered";
    case LIG_BORDER_NOT_FOUND: return "border_not_found";
    case LIG_GRID_EXHAUSTED: return "grid_exhausted";
    case LIG_NONPHYSICAL_STATE: return "nonphysical_state";
    case LIG_SHAPE_MISMATCH: return "shape_mismatch";
    case LIG_DEGENERATE_FIELD: return "degenerate_field";
    case LIG_SUPPORT_VIOLATION: return "support_violation";
    case LIG_BUFFER_TOO_SMALL: return "buffer_too_small";
    case LIG_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lig_last_error(void) { return g_last_error.c_str(); }

lig_riemann_options lig_riemann_options_default(void) {
  const lig::RiemannOptions o;
  return {o.eps, o.max_iter};
}

lig_status lig_to_conserved(double sigma, lig_fluid f, lig_conserved* out) {
  if (!out) return fail(LIG_INVALID_ARGUMENT, "null output");
  if (!lig::is_valid({f.rho, f.v})) return fail(LIG_NONPHYSICAL_INPUT, "need rho > 0 and |v| < 1");
  return guarded([&] {
    const auto u = lig::to_conserved({f.rho, f.v}, lig::Eos(sigma));
    *out = {u.u0, u.u1};
  });
}

lig_status lig_from_conserved(double sigma, lig_conserved u, lig_fluid* out) {
  if (!out) return fail(LIG_INVALID_ARGUMENT, "null output");
  return guarded([&] {
    const auto f = lig::from_conserved({u.u0, u.u1}, lig::Eos(sigma));
    *out = {f.rho, f.v};
  });
}

lig_status lig_riemann_solve(double sigma, lig_fluid left, lig_fluid right,
                             const lig_riemann_options* opt, lig_fan* out) {
  if (!out) return fail(LIG_INVALID_ARGUMENT, "null output");
  return guarded([&] {
    const auto fan = lig::solve_middle_state({left.rho, left.v}, {right.rho, right.v},
                                             lig::Eos(sigma), riemann_options(opt));
    out->left = {fan.left.rho, fan.left.v};
    out->middle = {fan.middle.rho, fan.middle.v};
    out->right = {fan.right.rho, fan.right.v};
    out->wave1 = to_c(fan.wave1);
    out->wave2 = to_c(fan.wave2);
    out->region = static_cast<int>(fan.region);
  });
}

lig_status lig_riemann_sample(double sigma, const lig_fan* fan, double xi, lig_fluid* out) {
  if (!fan || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lig::WaveFan f;
    f.left = {fan->left.rho, fan->left.v};
    f.middle = {fan->middle.rho, fan->middle.v};
    f.right = {fan->right.rho, fan->right.v};
    f.wave1 = from_c(fan->wave1);
    f.wave2 = from_c(fan->wave2);
    f.region = static_cast<lig::Region>(fan->region);
    const auto s = lig::sample(f, xi, lig::Eos(sigma));
    *out = {s.rho, s.v};
  });
}

lig_model_params lig_model_params_default(void) {
  const lig::ModelSpec s;
  return {LIG_FRW1, s.eos.sigma(), s.t0, s.psi0, s.B0, s.r0, 0};
}

lig_status lig_model_create(const lig_model_params* p, lig_model** out) {
  if (!p || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lig::ModelSpec s;
    s.kind = to_kind(p->kind);
    s.eos = lig::Eos(p->sigma);
    s.t0 = p->t0;
    s.psi0 = p->psi0;
    s.B0 = p->b0;
    s.r0 = p->r0;
    s.reversed = p->reversed != 0;
    *out = new lig_model{lig::Model(s)};
  });
}

void lig_model_destroy(lig_model* m) { delete m; }

lig_status lig_model_match(const lig_model* m, lig_match* out) {
  if (!m || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  const auto& d = m->model.match_data();
  *out = {d.r0, d.t0, d.v0, d.B0, d.psi0};
  g_last_error.clear();
  return LIG_OK;
}

lig_status lig_model_eval(const lig_model* m, double t, double r, lig_point* out) {
  if (!m || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = to_c(m->model.exact(t, r)); });
}

lig_status lig_model_initial(const lig_model* m, double r, lig_point* out) {
  if (!m || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = to_c(m->model.initial(r)); });
}

lig_sim_options lig_sim_options_default(void) {
  const lig::SimOptions o;
  return {o.riemann.eps,   o.riemann.max_iter,         o.horizon_A, o.tov_threshold,
          o.track_cones ? 1 : 0, o.cone_origin, o.min_cells};
}

lig_status lig_sim_create(const lig_model* m, const lig_grid* g, const lig_sim_options* opt,
                          lig_sim** out) {
  if (!m || !g || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lig::SimOptions o;
    if (opt) {
      o.riemann.eps = opt->eps;
      o.riemann.max_iter = opt->max_iter;
      o.horizon_A = opt->horizon_a;
      o.tov_threshold = opt->tov_threshold;
      o.track_cones = opt->track_cones != 0;
      o.cone_origin = opt->cone_origin;
      o.min_cells = opt->min_cells;
    }
    *out = new lig_sim{lig::Simulation(m->model, lig::Grid{g->r_min, g->r_max, g->n}, o)};
  });
}

void lig_sim_destroy(lig_sim* s) { delete s; }

lig_status lig_sim_step(lig_sim* s, double t_end, lig_step_report* out) {
  if (!s) return fail(LIG_INVALID_ARGUMENT, "null simulation");
  return guarded([&] {
    const auto r = s->sim.step(t_end);
    if (out) {
      *out = {r.t, r.dt, r.max_light_speed, {r.regions[0], r.regions[1], r.regions[2], r.regions[3]},
              r.rematched ? 1 : 0, r.boundary_hit ? 1 : 0};
    }
  });
}

double lig_sim_time(const lig_sim* s) { return s ? s->sim.t() : std::nan(""); }

int lig_sim_cells(const lig_sim* s) { return s ? s->sim.n() : 0; }

double lig_sim_dx(const lig_sim* s) { return s ? s->sim.dx() : std::nan(""); }

lig_status lig_sim_field(const lig_sim* s, lig_field f, double* buf, size_t cap, size_t* len) {
  if (!s) return fail(LIG_INVALID_ARGUMENT, "null simulation");
  const auto& sim = s->sim;
  const int n = sim.n();
  std::vector<double> v;
  switch (f) {
    case LIG_FIELD_X:
      v = sim.cell_x();
      break;
    case LIG_FIELD_EDGE_X:
      v = sim.edge_x();
      break;
    case LIG_FIELD_RHO:
    case LIG_FIELD_V:
    case LIG_FIELD_U0:
    case LIG_FIELD_U1:
      for (int i = 1; i <= n; ++i) {
        const auto& c = sim.cells()[i];
        v.push_back(f == LIG_FIELD_RHO ? c.f.rho
                    : f == LIG_FIELD_V ? c.f.v
                    : f == LIG_FIELD_U0 ? c.u.u0
                                        : c.u.u1);
      }
      break;
    case LIG_FIELD_A:
    case LIG_FIELD_B:
    case LIG_FIELD_M:
      for (int i = 1; i <= n + 1; ++i) {
        const auto& e = sim.edges()[i];
        v.push_back(f == LIG_FIELD_A ? e.A : f == LIG_FIELD_B ? e.B : e.M);
      }
      break;
    default:
      return fail(LIG_INVALID_ARGUMENT, "unknown field");
  }
  const lig_status st = copy_out(v, buf, cap, len);
  if (st == LIG_OK) g_last_error.clear();
  return st;
}

lig_status lig_sim_rows(const lig_sim* s, lig_row* buf, size_t cap, size_t* len) {
  if (!s) return fail(LIG_INVALID_ARGUMENT, "null simulation");
  std::vector<lig_row> rows;
  for (const auto& r : s->sim.rows()) rows.push_back({r.r, r.rho, r.v, r.A, r.B, r.M, r.light, r.mu});
  const lig_status st = copy_out(rows, buf, cap, len);
  if (st == LIG_OK) g_last_error.clear();
  return st;
}

lig_status lig_sim_cones(const lig_sim* s, lig_cones* out) {
  if (!s || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  const auto& c = s->sim.cones();
  *out = {c.light_left, c.light_right, c.sound_left, c.sound_right, c.frozen};
  g_last_error.clear();
  return LIG_OK;
}

lig_status lig_sim_frw_border(const lig_sim* s, int* cell) {
  if (!s || !cell) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *cell = s->sim.frw_border_cell().value_or(0); });
}

lig_status lig_sim_tov_border(const lig_sim* s, int* cell) {
  if (!s || !cell) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *cell = s->sim.tov_border_cell().value_or(0); });
}

lig_status lig_sim_black_hole(const lig_sim* s, double* mu, double* r) {
  if (!s || !mu) return fail(LIG_INVALID_ARGUMENT, "null argument");
  const auto [m, x] = s->sim.black_hole_number();
  *mu = m;
  if (r) *r = x;
  g_last_error.clear();
  return LIG_OK;
}

lig_status lig_sim_rematch_b(const lig_sim* s, double* bt) {
  if (!s || !bt) return fail(LIG_INVALID_ARGUMENT, "null argument");
  *bt = s->sim.rematched_B();
  g_last_error.clear();
  return LIG_OK;
}

lig_status lig_sim_chop_right(lig_sim* s) {
  if (!s) return fail(LIG_INVALID_ARGUMENT, "null simulation");
  return guarded([&] { s->sim.chop_right(); });
}

lig_status lig_sim_add_probe(lig_sim* s, lig_bump phi, int* id) {
  if (!s || !id) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *id = s->sim.add_probe({phi.tc, phi.ht, phi.xc, phi.hx}); });
}

lig_status lig_sim_probe_residual(const lig_sim* s, int id, double* e0, double* e1) {
  if (!s || !e0 || !e1) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = s->sim.residual(id);
    *e0 = r.e0;
    *e1 = r.e1;
  });
}

lig_status lig_total_variation(const double* f, size_t n, double* out) {
  if ((!f && n) || !out) return fail(LIG_INVALID_ARGUMENT, "null argument");
  *out = lig::total_variation({f, n});
  g_last_error.clear();
  return LIG_OK;
}

lig_status lig_one_norm_error(const double* num, const double* ref, size_t n, size_t first,
                              size_t last, double dx, double* out) {
  if ((!num || !ref) && n) return fail(LIG_INVALID_ARGUMENT, "null argument");
  if (!out) return fail(LIG_INVALID_ARGUMENT, "null output");
  return guarded([&] { *out = lig::one_norm_error({num, n}, {ref, n}, first, last, dx); });
}

lig_status lig_convergence_rates(const double* errors, size_t n, double* rates) {
  if ((!errors || !rates) && n) return fail(LIG_INVALID_ARGUMENT, "null argument");
  const auto r = lig::convergence_rates({errors, n});
  for (size_t i = 0; i < n; ++i) rates[i] = r[i];
  g_last_error.clear();
  return LIG_OK;
}

lig_status lig_b_affine_remap(const double* b1, size_t n1, const double* b2, size_t n2,
                              double* out, double* scale) {
  if ((!b1 && n1) || (!b2 && n2) || (!out && n1)) return fail(LIG_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = lig::b_affine_remap({b1, n1}, {b2, n2});
    for (size_t i = 0; i < n1; ++i) out[i] = r.values[i];
    if (scale) *scale = r.scale;
  });
}

double lig_coordinate_time_map(double t1, double psi0) { return lig::coordinate_time_map(t1, psi0); }

double lig_units_convert(double value, lig_unit to) {
  switch (to) {
    case LIG_UNIT_KM:
      return lig::units_convert(value, lig::Unit::length_km);
    case LIG_UNIT_SEC:
      return lig::units_convert(value, lig::Unit::time_sec);
    case LIG_UNIT_MSUN_PER_KM3:
      return lig::units_convert(value, lig::Unit::density_msun_per_km3);
  }
  return std::nan("");
}

}  // extern "C"
