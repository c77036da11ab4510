// Acceptance gates 1-8. Each prints one PASS/FAIL line; the exit status is nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "diagnostics.hpp"
#include "error.hpp"
#include "models.hpp"
#include "riemann.hpp"
#include "scheme.hpp"

using namespace lig;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Least-squares slope of -log2(e) against log2(n).
double fitted_rate(const std::vector<int>& ns, const std::vector<double>& es) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double x = std::log2(static_cast<double>(ns[k]));
    const double y = -std::log2(es[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string join(const std::vector<double>& v, const char* f) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += fmt(f, v[k]);
  }
  return s;
}

// ---------------------------------------------------------------------------------------------
// 1. Reference shock tube.

double rh_residual(Fluid a, Fluid b, double s, const Eos& e) {
  const Conserved ua = to_conserved(a, e);
  const Conserved ub = to_conserved(b, e);
  const Stress ta = minkowski_stress(a, e, 1.0);
  const Stress tb = minkowski_stress(b, e, 1.0);
  const double r0 = s * (ub.u0 - ua.u0) - (tb.t01 - ta.t01);
  const double r1 = s * (ub.u1 - ua.u1) - (tb.t11 - ta.t11);
  return std::max(std::fabs(r0), std::fabs(r1)) / std::max(ua.u0, ub.u0);
}

bool sig4(double got, double want) { return std::fabs(got - want) <= 0.5e-3 * std::fabs(want) * 1.0000001; }

Outcome criterion1() {
  const Eos e;
  const Fluid l{1e8, 0.3}, r{1e9, 0.6};
  const WaveFan fan = solve_middle_state(l, r, e);
  const double s1 = fan.wave1.lo, h2 = fan.wave2.lo, t2 = fan.wave2.hi;
  const bool state_ok = sig4(fan.middle.rho, 2.002e8) && sig4(fan.middle.v, 0.0639);
  const bool speeds_ok = std::fabs(s1 + 0.1717) <= 5e-4 && std::fabs(h2 - 0.3972) <= 5e-4 &&
                         std::fabs(t2 - 0.9333) <= 5e-4;
  // Jump condition of the tabulated middle state across the tabulated 1-shock speed.
  const double rh_ref = rh_residual(l, {2.002e8, 0.0639}, -0.1717, e);
  const double rh_ours = rh_residual(l, fan.middle, s1, e);
  return {state_ok && speeds_ok,
          fmt("middle=(%.6e, %.6f) want (2.002e8, 0.0639); speeds %.5f %.5f %.5f want -0.1717 "
              "0.3972 0.9333; RH residual ours %.1e, reference values %.1e",
              fan.middle.rho, fan.middle.v, s1, h2, t2, rh_ours, rh_ref)};
}

// ---------------------------------------------------------------------------------------------
// 2. Round trips and fan recomposition.

Outcome criterion2() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lrho(-6.0, 12.0), vel(-0.999, 0.999);
  const Eos e;
  double worst_u = 0.0, worst_i = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Fluid f{std::pow(10.0, lrho(rng)), vel(rng)};
    const Fluid g = from_conserved(to_conserved(f, e), e);
    const Fluid h = from_invariants(to_invariants(f, e), e);
    worst_u = std::max({worst_u, rel(g.rho, f.rho), std::fabs(g.v - f.v)});
    worst_i = std::max({worst_i, rel(h.rho, f.rho), std::fabs(h.v - f.v)});
  }
  const RiemannOptions opt;
  std::uniform_real_distribution<double> lr(-4.0, 4.0), vv(-0.95, 0.95);
  double worst_fan = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Fluid l{std::pow(10.0, lr(rng)), vv(rng)};
    const Fluid r{std::pow(10.0, lr(rng)), vv(rng)};
    const WaveFan fan = solve_middle_state(l, r, e, opt);
    const WaveCurvePoint w1 = wave_curve(1, fan.wave1.kind, fan.wave1.beta, e);
    const WaveCurvePoint w2 = wave_curve(2, fan.wave2.kind, fan.wave2.beta, e);
    const Invariants il = to_invariants(l, e), ir = to_invariants(r, e);
    worst_fan = std::max({worst_fan, std::fabs(il.r + w1.dr + w2.dr - ir.r),
                          std::fabs(il.s + w1.ds + w2.ds - ir.s)});
  }
  const bool ok = worst_u <= 1e-12 && worst_i <= 1e-12 && worst_fan <= 10.0 * opt.eps;
  return {ok, fmt("conserved %.2e, invariants %.2e (tol 1e-12); recomposition %.2e (tol %.0e)",
                  worst_u, worst_i, worst_fan, 10.0 * opt.eps)};
}

// ---------------------------------------------------------------------------------------------
// 3. Time dilation against a quadrature oracle.

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

// Mean of u over [a, b] for u(x) = to_conserved(sample(fan, (x - x0) / (alpha t))), split at the
// fan edges so every panel is smooth; adaptive Gauss-Kronrod inside each panel.
Conserved half_average(const WaveFan& fan, double x0, double alpha, double t, double a, double b,
                       const Eos& e) {
  std::vector<double> cuts{a, b};
  for (double xi : {fan.wave1.lo, fan.wave1.hi, fan.wave2.lo, fan.wave2.hi}) {
    const double x = x0 + xi * alpha * t;
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  Conserved sum{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (!(cuts[k + 1] > cuts[k])) continue;
    auto u = [&](double x) { return to_conserved(sample(fan, (x - x0) / (alpha * t), e), e); };
    sum.u0 += Kronrod::integrate([&](double x) { return u(x).u0; }, cuts[k], cuts[k + 1], 10, 1e-11);
    sum.u1 += Kronrod::integrate([&](double x) { return u(x).u1; }, cuts[k], cuts[k + 1], 10, 1e-11);
  }
  return {sum.u0 / (b - a), sum.u1 / (b - a)};
}

Outcome criterion3() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> lr(-2.0, 2.0), vv(-0.9, 0.9), met(0.3, 1.8), lam(0.05, 0.95);
  const Eos e;
  RiemannOptions opt;
  opt.eps = 1e-13;
  double worst_affine = 0.0, worst_godunov = 0.0;
  const double dx = 1.0;
  for (int k = 0; k < 100; ++k) {
    const Fluid fl{std::pow(10.0, lr(rng)), vv(rng)};
    const Fluid fc{std::pow(10.0, lr(rng)), vv(rng)};
    const Fluid fr{std::pow(10.0, lr(rng)), vv(rng)};
    const MetricPoint ml{met(rng), met(rng)}, mr{met(rng), met(rng)};
    const double al = ml.light_speed(), ar = mr.light_speed();
    const WaveFan left = solve_middle_state(fl, fc, e, opt);
    const WaveFan right = solve_middle_state(fc, fr, e, opt);
    const Conserved uc = to_conserved(fc, e);
    auto average = [&](double t) {
      const Conserved a = half_average(left, 0.0, al, t, 0.0, 0.5 * dx, e);
      const Conserved b = half_average(right, dx, ar, t, 0.5 * dx, dx, e);
      return Conserved{0.5 * (a.u0 + b.u0), 0.5 * (a.u1 + b.u1)};
    };
    const double dt_max = dx / (2.0 * std::max(al, ar));
    const double l = lam(rng);
    const Conserved full = average(dt_max);
    const Conserved part = average(l * dt_max);
    const double scale = std::max({uc.u0, to_conserved(fl, e).u0, to_conserved(fr, e).u0});
    const double a0 = l * full.u0 + (1.0 - l) * uc.u0 - part.u0;
    const double a1 = l * full.u1 + (1.0 - l) * uc.u1 - part.u1;
    worst_affine = std::max(worst_affine, std::max(std::fabs(a0), std::fabs(a1)) / scale);
    const Conserved g = godunov_cell_update(uc, fc, sample(left, 0.0, e), sample(right, 0.0, e), ml,
                                            mr, l * dt_max, dx, e);
    worst_godunov = std::max(
        worst_godunov, std::max(std::fabs(g.u0 - part.u0), std::fabs(g.u1 - part.u1)) / scale);
  }
  return {worst_affine <= 1e-8 && worst_godunov <= 1e-8,
          fmt("affine relation %.2e, Godunov step vs quadrature %.2e (tol 1e-8, 100 pairs)",
              worst_affine, worst_godunov)};
}

// ---------------------------------------------------------------------------------------------
// 4. Continuous models.

Model make(ModelKind kind) {
  ModelSpec s;
  s.kind = kind;
  return Model(s);
}

struct Errors {
  double rho, v, A, B;
};

Errors frw1_errors(int n) {
  const Model m = make(ModelKind::frw1);
  Simulation sim(m, {3.0, 7.0, n});
  const double t_end = m.start_time() + 1.0;
  sim.run(t_end);
  Errors e{0, 0, 0, 0};
  for (const Row& r : sim.rows()) {
    const ModelPoint p = m.exact(t_end, r.r);
    e.rho += std::fabs(r.rho - p.fluid.rho) * sim.dx();
    e.v += std::fabs(r.v - p.fluid.v) * sim.dx();
    e.A += std::fabs(r.A - p.metric.A) * sim.dx();
    e.B += std::fabs(r.B - p.metric.B) * sim.dx();
  }
  return e;
}

Outcome criterion4() {
  const std::vector<int> ns{64, 128, 256, 512, 1024, 2048};
  std::vector<double> er, ev, ea, eb;
  double rho1024 = 0.0;
  for (int n : ns) {
    const Errors e = frw1_errors(n);
    er.push_back(e.rho);
    ev.push_back(e.v);
    ea.push_back(e.A);
    eb.push_back(e.B);
    if (n == 1024) rho1024 = e.rho;
  }
  bool rates_ok = true;
  std::string rates;
  for (auto* es : {&er, &ev, &ea, &eb}) {
    const auto r = convergence_rates(*es);
    for (std::size_t k = 1; k < r.size(); ++k) rates_ok = rates_ok && std::fabs(r[k] - 1.0) <= 0.2;
    rates += "[" + join(std::vector<double>(r.begin() + 1, r.end()), "%.2f") + "]";
  }
  const bool mag_ok = rho1024 >= 1.69e-8 / 2.0 && rho1024 <= 1.69e-8 * 2.0;

  // Static TOV at the finest desk level.
  const int nt = 2048;
  const Model tov = make(ModelKind::tov);
  Simulation st(tov, {3.0, 7.0, nt});
  const auto before = st.rows();
  st.run(tov.start_time() + 1.0);
  const auto after = st.rows();
  double drho = 0, nrho = 0, dB = 0, nB = 0, dM = 0, nM = 0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    drho += std::fabs(after[i].rho - before[i].rho);
    nrho += std::fabs(before[i].rho);
    dB += std::fabs(after[i].B - before[i].B);
    nB += std::fabs(before[i].B);
    dM += std::fabs(after[i].M - before[i].M);
    nM += std::fabs(before[i].M);
  }
  const double drift = std::max({drho / nrho, dB / nB, dM / nM});
  const bool tov_ok = drift <= 1e-5;

  // FRW-2 light speed.
  const Model f2 = make(ModelKind::frw2);
  Simulation s2(f2, {3.0, 7.0, 1024});
  auto light_range = [&] {
    double lo = 1e300, hi = 0.0;
    for (const Row& r : s2.rows()) {
      lo = std::min(lo, r.light);
      hi = std::max(hi, r.light);
    }
    return std::pair{lo, hi};
  };
  const auto l0 = light_range();
  s2.run(f2.start_time() + 1.0);
  const auto l1 = light_range();
  const bool frw2_ok = std::fabs(l0.first - 1.0) <= 0.01 && std::fabs(l0.second - 1.0) <= 0.01 &&
                       std::fabs(l1.first - 1.0667) <= 0.01 && std::fabs(l1.second - 1.0667) <= 0.01;

  return {rates_ok && mag_ok && tov_ok && frw2_ok,
          fmt("FRW-1 rates rho,v,A,B %s (%s); rho err n=1024 %.3e vs 1.69e-8 within x2 (%s); "
              "TOV drift n=%d rho %.1e B %.1e M %.1e (tol 1e-5, %s); FRW-2 light %.5f..%.5f -> "
              "%.5f..%.5f (%s)",
              rates.c_str(), rates_ok ? "ok" : "out of 1.0+-0.2", rho1024, mag_ok ? "ok" : "no", nt,
              drho / nrho, dB / nB, dM / nM, tov_ok ? "ok" : "over", l0.first, l0.second, l1.first,
              l1.second, frw2_ok ? "ok" : "off")};
}

// ---------------------------------------------------------------------------------------------
// 5. Matched FRW-1/TOV structure.

Outcome criterion5() {
  const Model m = make(ModelKind::matched_frw1_tov);
  const MatchData d = m.match_data();
  const ModelPoint frw = m.left_side(d.t0, d.r0);
  const ModelPoint tov = m.right_side(d.t0, d.r0);
  const double jump = frw.fluid.rho / tov.fluid.rho;
  const double a_gap = std::max(std::fabs(frw.metric.A - tov.metric.A), std::fabs(frw.metric.A - 4.0 / 7.0));
  const bool model_ok = std::fabs(d.t0 - 5.4554) <= 1e-3 && std::fabs(jump - 3.0) <= 1e-6 && a_gap <= 1e-12;

  SimOptions opt;
  opt.track_cones = true;
  Simulation sim(m, {3.0, 7.0, 2048}, opt);
  sim.run(d.t0 + 1.0);
  const auto rows = sim.rows();
  // The inner shock is the steepest rise in density, the outer one the steepest fall; the region
  // between them must be denser than either side.
  std::size_t up = 0, dn = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double d = rows[i + 1].rho - rows[i].rho;
    if (d > rows[up + 1].rho - rows[up].rho) up = i;
    if (d < rows[dn + 1].rho - rows[dn].rho) dn = i;
  }
  const std::size_t a = up >= 3 ? up - 3 : 0;
  const std::size_t b = std::min(dn + 4, rows.size() - 1);
  double inner_min = 1e300;
  for (std::size_t i = up + 4; i + 3 < dn; ++i) inner_min = std::min(inner_min, rows[i].rho);
  const bool bracket = up + 8 < dn && inner_min > rows[a].rho && inner_min > rows[b].rho &&
                       rows[a].r < d.r0 && rows[b].r > d.r0;

  const auto fb = sim.frw_border_cell();
  const auto tb = sim.tov_border_cell();
  const Cones& c = sim.cones();
  const double fr = fb ? sim.grid().x(*fb) : NAN;
  const double tr = tb ? sim.grid().x(*tb) : NAN;
  const double gap_f = std::fabs(fr - c.sound_left);
  const double gap_t = std::fabs(tr - c.sound_right);
  const bool gaps_ok = fb && tb && gap_f <= 0.03 && gap_t <= 0.06;
  return {model_ok && bracket && gaps_ok,
          fmt("t0=%.5f jump=%.9f A gap %.1e; shocks near r=%.4f,%.4f with denser gap %s; n=2048 FRW "
              "border %.4f sound %.4f gap %.4f (tol 0.03), TOV border %.4f sound %.4f gap %.4f "
              "(tol 0.06)",
              d.t0, jump, a_gap, rows[up].r, rows[dn].r, bracket ? "yes" : "no", fr, c.sound_left,
              gap_f, tr, c.sound_right, gap_t)};
}

// ---------------------------------------------------------------------------------------------
// 6. Coordinate covariance between the FRW-1/TOV and FRW-2/TOV runs.

Outcome criterion6() {
  const Model m1 = make(ModelKind::matched_frw1_tov);
  const Model m2 = make(ModelKind::matched_frw2_tov);
  const double t1 = 6.4554, t2 = 11.8688;
  const std::vector<int> ns{64, 128, 256, 512, 1024};
  std::vector<double> rho_err, b_err;
  double scale = 0.0;
  for (int n : ns) {
    Simulation a(m1, {3.0, 7.0, n});
    Simulation b(m2, {3.0, 7.0, n});
    a.run(t1);
    b.run(t2);
    const auto ra = a.rows(), rb = b.rows();
    std::vector<double> ba, bb;
    double e = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      e += std::fabs(ra[i].rho - rb[i].rho) * a.dx();
      ba.push_back(ra[i].B);
      bb.push_back(rb[i].B);
    }
    const Remap rm = b_affine_remap(ba, bb);
    double eb = 0.0;
    for (std::size_t i = 0; i < bb.size(); ++i) eb += std::fabs(rm.values[i] - bb[i]) * a.dx();
    rho_err.push_back(e);
    b_err.push_back(eb);
    scale = rm.scale;
  }
  const double rate = fitted_rate(ns, rho_err);
  const double want = time_map_scale(t2, m2.match_data().psi0);
  const bool ok = std::fabs(scale - 1.1833) <= 1e-3 && rate >= 0.7;
  return {ok, fmt("B remap scale %.5f (map %.5f, want 1.1833+-1e-3); rho error %s, fitted rate "
                  "%.2f (min 0.7); remapped B error %s",
                  scale, want, join(rho_err, "%.2e").c_str(), rate, join(b_err, "%.2e").c_str())};
}

// ---------------------------------------------------------------------------------------------
// 7. Time-reversed run.

double max_metric_kink(const Simulation& s) {
  std::vector<double> a;
  // Edges 1..n+1 are the real ones.
  for (std::size_t i = 1; i < s.edges().size(); ++i) a.push_back(s.edges()[i].A);
  const auto d = three_point_derivative(a, s.dx());
  double k = 0.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) k = std::max(k, std::fabs(d[i + 1] - d[i]));
  return k;
}

// A jump in A' keeps its per-cell size under refinement; a steep smooth profile shrinks like dx.
struct KinkTest {
  double coarse, fine;
  bool detected(double thr) const { return fine > thr && coarse / fine < std::pow(2.0, 0.25); }
};

KinkTest kink_after_one_unit(bool reversed, int n) {
  ModelSpec spec;
  spec.kind = ModelKind::matched_frw1_tov;
  spec.reversed = reversed;
  const Model m(spec);
  double k[2];
  for (int level = 0; level < 2; ++level) {
    Simulation sim(m, {0.1, 20.0, n << level});
    sim.run(m.start_time() + 1.0);
    k[level] = max_metric_kink(sim);
  }
  return {k[0], k[1]};
}

Outcome criterion7() {
  ModelSpec spec;
  spec.kind = ModelKind::matched_frw1_tov;
  spec.reversed = true;
  const Model m(spec);
  const SimOptions opt;
  Simulation sim(m, {0.1, 20.0, 1024}, opt);
  double mu_prev = sim.black_hole_number().first;
  double mu_hit = mu_prev, r_hit = 0.0;
  bool monotone = true, hit = false;
  int steps = 0;
  const double t_cap = m.start_time() + 10.0;
  try {
    while (sim.t() < t_cap) {
      const StepReport rep = sim.step(t_cap);
      ++steps;
      const auto [mu, r] = sim.black_hole_number();
      monotone = monotone && mu >= mu_prev * (1.0 - 1e-12);
      mu_prev = mu;
      if (rep.boundary_hit) {
        hit = true;
        mu_hit = mu;
        r_hit = r;
        break;
      }
    }
  } catch (const Error& e) {
    return {false, fmt("reversed run stopped after %d steps: %s", steps, e.what())};
  }

  const double thr = opt.tov_threshold;
  const KinkTest rev = kink_after_one_unit(true, 1024);
  const KinkTest fwd = kink_after_one_unit(false, 1024);
  const bool ok = hit && monotone && mu_hit > 0.8 && !rev.detected(thr) && fwd.detected(thr);
  return {ok, fmt("n=1024 boundary hit %s at t=%.5f after %d steps; mu_max %.4f at r=%.3f (min "
                  "0.8), monotone %s; max per-cell jump in A' one unit after start, n=1024/2048: "
                  "reversed %.2e/%.2e (%s), forward control %.2e/%.2e (%s), threshold %.2g",
                  hit ? "yes" : "no", sim.t(), steps, mu_hit, r_hit, monotone ? "yes" : "no",
                  rev.coarse, rev.fine, rev.detected(thr) ? "jump" : "continuous", fwd.coarse,
                  fwd.fine, fwd.detected(thr) ? "jump" : "continuous", thr)};
}

// ---------------------------------------------------------------------------------------------
// 8. Weak-form residual.

Outcome criterion8() {
  const Model m = make(ModelKind::frw1);
  const double t0 = m.start_time();
  const std::vector<Bump> bumps{{t0 + 0.5, 0.3, 4.5, 0.8}, {t0 + 0.4, 0.25, 5.6, 0.6},
                                {t0 + 0.6, 0.35, 5.0, 1.5}};
  const std::vector<int> ns{64, 128, 256, 512, 1024};
  std::vector<std::vector<double>> res(bumps.size());
  for (int n : ns) {
    Simulation sim(m, {3.0, 7.0, n});
    std::vector<int> ids;
    for (const Bump& b : bumps) ids.push_back(sim.add_probe(b));
    sim.run(t0 + 1.0);
    for (std::size_t k = 0; k < bumps.size(); ++k) {
      const Residual r = sim.residual(ids[k]);
      res[k].push_back(std::hypot(r.e0, r.e1));
    }
  }
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < bumps.size(); ++k) {
    const double rate = fitted_rate(ns, res[k]);
    ok = ok && rate >= 0.8;
    detail += fmt("%sphi%zu |eps| %s rate %.2f", k ? "; " : "", k + 1, join(res[k], "%.2e").c_str(), rate);
  }
  return {ok, detail + " (min 0.8)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> gates{
      {"riemann reference shock tube", criterion1},
      {"round trips and fan recomposition", criterion2},
      {"time dilation", criterion3},
      {"continuous models", criterion4},
      {"matched model structure", criterion5},
      {"coordinate covariance", criterion6},
      {"time-reversed model", criterion7},
      {"weak-form residual", criterion8}};
  int failed = 0;
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = gates[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s [%.1fs] %s\n", k + 1, o.pass ? "PASS" : "FAIL", gates[k].first,
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
