#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "api.hpp"
#include "config.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace ligsim;

namespace {

constexpr const char* kRowHeader = "r,rho,v,A,B,M,light,mu";

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void write_rows(const fs::path& path, const std::vector<lig_row>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kRowHeader << '\n';
  for (const auto& r : rows) {
    out << sci(r.r) << ',' << sci(r.rho) << ',' << sci(r.v) << ',' << sci(r.A) << ',' << sci(r.B)
        << ',' << sci(r.M) << ',' << sci(r.light) << ',' << sci(r.mu) << '\n';
  }
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

lig_model_kind kind_of(const std::string& m) {
  if (m == "frw1") return LIG_FRW1;
  if (m == "frw2") return LIG_FRW2;
  if (m == "tov") return LIG_TOV;
  if (m == "frw1-tov") return LIG_FRW1_TOV;
  return LIG_FRW2_TOV;
}

lig_model_params params_of(const RunConfig& c) {
  lig_model_params p = lig_model_params_default();
  p.kind = kind_of(c.model);
  p.sigma = c.sigma;
  p.t0 = c.t0;
  p.psi0 = c.psi0;
  p.b0 = c.b0;
  p.r0 = c.r0;
  p.reversed = c.reversed ? 1 : 0;
  return p;
}

lig_sim_options options_of(const RunConfig& c) {
  lig_sim_options o = lig_sim_options_default();
  o.eps = c.eps;
  o.tov_threshold = c.tov_threshold;
  o.track_cones = c.cones ? 1 : 0;
  o.min_cells = c.min_cells;
  return o;
}

json config_json(const RunConfig& c) {
  return {{"model", c.model},
          {"r_min", c.r_min},
          {"r_max", c.r_max},
          {"r0", c.r0},
          {"n", c.n},
          {"duration", c.duration},
          {"reversed", c.reversed},
          {"sigma", c.sigma},
          {"eps", c.eps},
          {"t0", c.t0},
          {"psi0", c.psi0},
          {"b0", c.b0},
          {"snapshot_every", c.snapshot_every},
          {"output_dir", c.output_dir},
          {"cones", c.cones},
          {"tov_threshold", c.tov_threshold},
          {"levels", c.levels},
          {"reference_n", c.reference_n},
          {"continue_chop", c.continue_chop},
          {"min_cells", c.min_cells}};
}

json match_json(const lig_model* m) {
  lig_match d{};
  check(lig_model_match(m, &d));
  return {{"r0", number(d.r0)}, {"t0", d.t0}, {"v0", d.v0}, {"b0", d.b0}, {"psi0", d.psi0}};
}

double start_time(const lig_model* m) {
  lig_match d{};
  check(lig_model_match(m, &d));
  return d.t0;
}

// Per-step diagnostics collected into the run manifest.
struct History {
  std::vector<double> t, dt, mu, mu_r, tv_rho, tv_v, light_max;
  std::vector<std::optional<double>> frw_border, tov_border;
  std::vector<double> light_left, light_right, sound_left, sound_right;
  std::vector<json> snapshots;

  void record(const lig_sim* s, const lig_step_report& rep, bool matched, bool cones) {
    t.push_back(rep.t);
    dt.push_back(rep.dt);
    light_max.push_back(rep.max_light_speed);
    double m = 0.0, r = 0.0;
    check(lig_sim_black_hole(s, &m, &r));
    mu.push_back(m);
    mu_r.push_back(r);
    const auto rho = field(s, LIG_FIELD_RHO);
    const auto v = field(s, LIG_FIELD_V);
    double tv = 0.0;
    check(lig_total_variation(rho.data(), rho.size(), &tv));
    tv_rho.push_back(tv);
    check(lig_total_variation(v.data(), v.size(), &tv));
    tv_v.push_back(tv);
    if (matched) {
      const auto x = field(s, LIG_FIELD_X);
      int cell = 0;
      check(lig_sim_frw_border(s, &cell));
      frw_border.push_back(cell > 0 ? std::optional<double>(x[cell - 1]) : std::nullopt);
      check(lig_sim_tov_border(s, &cell));
      tov_border.push_back(cell > 0 ? std::optional<double>(x[cell - 1]) : std::nullopt);
    }
    if (cones) {
      lig_cones c{};
      check(lig_sim_cones(s, &c));
      light_left.push_back(c.light_left);
      light_right.push_back(c.light_right);
      sound_left.push_back(c.sound_left);
      sound_right.push_back(c.sound_right);
    }
  }

  json to_json() const {
    auto opt = [](const std::vector<std::optional<double>>& v) {
      json a = json::array();
      for (const auto& x : v) a.push_back(x ? json(*x) : json(nullptr));
      return a;
    };
    json h{{"t", t},           {"dt", dt},       {"mu", mu},     {"mu_r", mu_r},
           {"tv_rho", tv_rho}, {"tv_v", tv_v},   {"max_light_speed", light_max}};
    if (!frw_border.empty()) {
      h["frw_border"] = opt(frw_border);
      h["tov_border"] = opt(tov_border);
    }
    if (!light_left.empty()) {
      h["cones"] = {{"light_left", light_left},
                    {"light_right", light_right},
                    {"sound_left", sound_left},
                    {"sound_right", sound_right}};
    }
    return h;
  }
};

void snapshot(const fs::path& dir, const lig_sim* s, int step, History& h) {
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%06d.csv", step);
  write_rows(dir / name, rows(s));
  h.snapshots.push_back({{"step", step}, {"t", lig_sim_time(s)}, {"file", name}});
}

lig_grid grid_of(const RunConfig& c, int n) { return {c.r_min, c.r_max, n}; }

struct RunOutcome {
  int exit_code = kOk;
  std::string status = "ok";
  std::string message;
};

RunOutcome outcome_of(const ApiError& e) {
  RunOutcome o;
  o.exit_code = e.exit_code();
  o.status = e.exit_code() == kHorizon ? "horizon" : "numerical_failure";
  o.message = e.what();
  return o;
}

void report(const RunOutcome& o) {
  if (o.exit_code != kOk) std::cerr << "ligsim: " << o.status << ": " << o.message << '\n';
}

int cmd_simulate(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  auto model = make_model(params_of(cfg));
  auto sim = make_sim(model.get(), grid_of(cfg, cfg.n), options_of(cfg));
  const double t_end = start_time(model.get()) + cfg.duration;
  History h;
  RunOutcome out;
  int step = 0;
  std::optional<int> boundary_step;
  snapshot(dir, sim.get(), 0, h);
  try {
    while (lig_sim_time(sim.get()) < t_end) {
      lig_step_report rep{};
      check(lig_sim_step(sim.get(), t_end, &rep));
      ++step;
      if (rep.boundary_hit && !boundary_step) boundary_step = step;
      h.record(sim.get(), rep, cfg.matched(), cfg.cones);
      if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) snapshot(dir, sim.get(), step, h);
    }
  } catch (const ApiError& e) {
    out = outcome_of(e);
  }
  if (h.snapshots.back()["step"] != step) snapshot(dir, sim.get(), step, h);
  write_rows(dir / "final.csv", rows(sim.get()));
  double bt = 0.0;
  check(lig_sim_rematch_b(sim.get(), &bt));
  json m{{"command", "simulate"},
         {"config", config_json(cfg)},
         {"match", match_json(model.get())},
         {"grid", {{"r_min", cfg.r_min}, {"r_max", cfg.r_max}, {"n", cfg.n}, {"dx", lig_sim_dx(sim.get())}}},
         {"status", out.status},
         {"message", out.message},
         {"steps", step},
         {"t_start", start_time(model.get())},
         {"t_final", lig_sim_time(sim.get())},
         {"boundary_hit_step", boundary_step ? json(*boundary_step) : json(nullptr)},
         {"rematched_b", bt},
         {"snapshots", h.snapshots},
         {"history", h.to_json()}};
  write_json(dir / "manifest.json", m);
  report(out);
  return out.exit_code;
}

int cmd_emit_model(const RunConfig& cfg, std::optional<double> at) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  auto model = make_model(params_of(cfg));
  const double t0 = start_time(model.get());
  const double t = at.value_or(t0);
  const double dx = (cfg.r_max - cfg.r_min) / (cfg.n - 1);
  std::vector<lig_row> out;
  out.reserve(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    const double r = cfg.r_min + i * dx;
    lig_point p{};
    check(t == t0 ? lig_model_initial(model.get(), r, &p) : lig_model_eval(model.get(), t, r, &p));
    out.push_back({r, p.rho, p.v, p.A, p.B, p.M, std::sqrt(p.A * p.B), 2.0 * p.M / r});
  }
  write_rows(dir / "model.csv", out);
  write_json(dir / "model.json", {{"command", "emit-model"},
                                  {"config", config_json(cfg)},
                                  {"match", match_json(model.get())},
                                  {"t", t},
                                  {"file", "model.csv"}});
  return kOk;
}

struct LevelResult {
  int n;
  double dx;
  std::vector<lig_row> rows;
};

LevelResult run_level(const RunConfig& cfg, const lig_model* model, int n, double t_end) {
  auto sim = make_sim(model, grid_of(cfg, n), options_of(cfg));
  while (lig_sim_time(sim.get()) < t_end) check(lig_sim_step(sim.get(), t_end, nullptr));
  return {n, lig_sim_dx(sim.get()), rows(sim.get())};
}

double interp(const std::vector<lig_row>& ref, double lig_row::*field, double x) {
  if (x <= ref.front().r) return ref.front().*field;
  if (x >= ref.back().r) return ref.back().*field;
  size_t lo = 0, hi = ref.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    (ref[mid].r <= x ? lo : hi) = mid;
  }
  const double w = (x - ref[lo].r) / (ref[hi].r - ref[lo].r);
  return (1.0 - w) * ref[lo].*field + w * ref[hi].*field;
}

int cmd_converge(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  auto model = make_model(params_of(cfg));
  const double t_end = start_time(model.get()) + cfg.duration;
  const bool exact = cfg.reference_n == 0;
  if (exact && cfg.matched()) {
    throw ConfigError("matched models have no closed form after t0; set reference_n");
  }
  RunOutcome outcome;
  std::vector<LevelResult> levels;
  std::optional<LevelResult> ref;
  try {
    for (int n : cfg.levels) levels.push_back(run_level(cfg, model.get(), n, t_end));
    if (!exact) ref = run_level(cfg, model.get(), cfg.reference_n, t_end);
  } catch (const ApiError& e) {
    outcome = outcome_of(e);
  }

  const std::vector<std::pair<const char*, double lig_row::*>> vars{
      {"rho", &lig_row::rho}, {"v", &lig_row::v}, {"A", &lig_row::A}, {"B", &lig_row::B}};
  std::map<std::string, std::vector<double>> err;
  for (const auto& lv : levels) {
    for (const auto& [name, f] : vars) {
      std::vector<double> num, cmp;
      for (const auto& r : lv.rows) {
        num.push_back(r.*f);
        if (exact) {
          lig_point p{};
          check(lig_model_eval(model.get(), t_end, r.r, &p));
          const lig_row e{r.r, p.rho, p.v, p.A, p.B, p.M, 0.0, 0.0};
          cmp.push_back(e.*f);
        } else {
          cmp.push_back(interp(ref->rows, f, r.r));
        }
      }
      double e = 0.0;
      check(lig_one_norm_error(num.data(), cmp.data(), num.size(), 0, num.size() - 1, lv.dx, &e));
      err[name].push_back(e);
    }
  }
  std::map<std::string, std::vector<double>> rate;
  for (const auto& [name, e] : err) {
    rate[name].resize(e.size());
    check(lig_convergence_rates(e.data(), e.size(), rate[name].data()));
  }

  std::ofstream csv(dir / "convergence.csv");
  csv << "n,err_rho,rate_rho,err_v,rate_v,err_A,rate_A,err_B,rate_B\n";
  for (size_t k = 0; k < levels.size(); ++k) {
    csv << levels[k].n;
    for (const auto& [name, f] : vars) csv << ',' << sci(err[name][k]) << ',' << sci(rate[name][k]);
    csv << '\n';
  }
  json table = json::array();
  for (size_t k = 0; k < levels.size(); ++k) {
    json row{{"n", levels[k].n}};
    for (const auto& [name, f] : vars) {
      row[std::string("err_") + name] = err[name][k];
      row[std::string("rate_") + name] = number(rate[name][k]);
    }
    table.push_back(row);
  }
  write_json(dir / "convergence.json", {{"command", "converge"},
                                        {"config", config_json(cfg)},
                                        {"reference", exact ? json("exact") : json(cfg.reference_n)},
                                        {"t_final", t_end},
                                        {"status", outcome.status},
                                        {"message", outcome.message},
                                        {"table", table}});
  report(outcome);
  return outcome.exit_code;
}

int cmd_reverse(RunConfig cfg) {
  cfg.model = "frw1-tov";
  cfg.reversed = true;
  validate(cfg);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  auto model = make_model(params_of(cfg));
  auto sim = make_sim(model.get(), grid_of(cfg, cfg.n), options_of(cfg));
  const double t_end = start_time(model.get()) + cfg.duration;
  History h;
  RunOutcome out;
  int step = 0;
  std::optional<int> boundary_step;
  int chopped = 0;
  snapshot(dir, sim.get(), 0, h);
  try {
    while (lig_sim_time(sim.get()) < t_end) {
      if (boundary_step) {
        if (!cfg.continue_chop) break;
        const auto x = field(sim.get(), LIG_FIELD_X);
        double mu = 0.0, r = 0.0;
        check(lig_sim_black_hole(sim.get(), &mu, &r));
        if (x.back() <= r) break;
        check(lig_sim_chop_right(sim.get()));
        ++chopped;
      }
      lig_step_report rep{};
      check(lig_sim_step(sim.get(), t_end, &rep));
      ++step;
      h.record(sim.get(), rep, true, cfg.cones);
      if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) snapshot(dir, sim.get(), step, h);
      if (rep.boundary_hit && !boundary_step) {
        boundary_step = step;
        snapshot(dir, sim.get(), step, h);
      }
    }
  } catch (const ApiError& e) {
    out = outcome_of(e);
    if (e.status() == LIG_GRID_EXHAUSTED) {
      out.exit_code = kOk;
      out.status = "grid_exhausted";
    }
  }
  if (h.snapshots.back()["step"] != step) snapshot(dir, sim.get(), step, h);
  write_rows(dir / "final.csv", rows(sim.get()));
  double mu = 0.0, r = 0.0;
  check(lig_sim_black_hole(sim.get(), &mu, &r));
  double mu_at_hit = std::numeric_limits<double>::quiet_NaN();
  double r_at_hit = mu_at_hit;
  if (boundary_step) {
    mu_at_hit = h.mu[*boundary_step - 1];
    r_at_hit = h.mu_r[*boundary_step - 1];
  }
  json m{{"command", "reverse"},
         {"config", config_json(cfg)},
         {"match", match_json(model.get())},
         {"status", out.status},
         {"message", out.message},
         {"steps", step},
         {"t_start", start_time(model.get())},
         {"t_final", lig_sim_time(sim.get())},
         {"boundary_hit_step", boundary_step ? json(*boundary_step) : json(nullptr)},
         {"mu_at_boundary_hit", number(mu_at_hit)},
         {"r_at_boundary_hit", number(r_at_hit)},
         {"cells_chopped", chopped},
         {"final_cells", lig_sim_cells(sim.get())},
         {"mu_final", mu},
         {"r_mu_final", r},
         {"snapshots", h.snapshots},
         {"history", h.to_json()}};
  write_json(dir / "manifest.json", m);
  report(out);
  return out.exit_code;
}

int cmd_riemann(double rho_l, double v_l, double rho_r, double v_r, double sigma, double eps,
                double xi_min, double xi_max, int count, const std::string& out_dir) {
  if (count < 2 || !(xi_max > xi_min)) throw ConfigError("need xi-count >= 2 and xi-max > xi-min");
  lig_riemann_options opt = lig_riemann_options_default();
  opt.eps = eps;
  lig_fan fan{};
  check(lig_riemann_solve(sigma, {rho_l, v_l}, {rho_r, v_r}, &opt, &fan));
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "riemann.csv");
  csv << "xi,rho,v\n";
  for (int k = 0; k < count; ++k) {
    const double xi = xi_min + (xi_max - xi_min) * k / (count - 1);
    lig_fluid f{};
    check(lig_riemann_sample(sigma, &fan, xi, &f));
    csv << sci(xi) << ',' << sci(f.rho) << ',' << sci(f.v) << '\n';
  }
  auto wave = [](const lig_wave& w) {
    return json{{"kind", w.kind == LIG_SHOCK ? "shock" : "rarefaction"},
                {"beta", w.beta},
                {"lo", w.lo},
                {"hi", w.hi}};
  };
  const json j{{"command", "riemann"},
               {"sigma", sigma},
               {"eps", eps},
               {"left", {{"rho", fan.left.rho}, {"v", fan.left.v}}},
               {"middle", {{"rho", fan.middle.rho}, {"v", fan.middle.v}}},
               {"right", {{"rho", fan.right.rho}, {"v", fan.right.v}}},
               {"region", fan.region},
               {"wave1", wave(fan.wave1)},
               {"wave2", wave(fan.wave2)},
               {"file", "riemann.csv"}};
  write_json(dir / "riemann.json", j);
  std::cout << j.dump(2) << '\n';
  return kOk;
}

// Adds --config plus one --key option per config key to a subcommand.
struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> flags;

  void attach(CLI::App* sub) {
    sub->add_option("-c,--config", file, "key=value config file");
    for (const auto& key : config_keys()) {
      std::string flag = "--" + key;
      for (auto& ch : flag) {
        if (ch == '_') ch = '-';
      }
      const bool boolean = key == "reversed" || key == "cones" || key == "continue_chop";
      auto* opt = sub->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { flags[key] = v.empty() ? "true" : v; },
          "config key " + key);
      if (boolean) opt->expected(0, 1);
    }
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!file.empty()) apply_config(cfg, read_config_file(file));
    apply_config(cfg, flags);
    validate(cfg);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally inertial Godunov solver for spherically symmetric fluid spacetimes"};
  app.require_subcommand(1);

  double rho_l = 0, v_l = 0, rho_r = 0, v_r = 0, sigma = 1.0 / 3.0, eps = 1e-10;
  double xi_min = -1.0, xi_max = 1.0;
  int xi_count = 201;
  std::string riemann_dir = ".";
  auto* riemann = app.add_subcommand("riemann", "solve one flat-space Riemann problem");
  riemann->add_option("--rho-l", rho_l, "left density")->required();
  riemann->add_option("--v-l", v_l, "left velocity")->required();
  riemann->add_option("--rho-r", rho_r, "right density")->required();
  riemann->add_option("--v-r", v_r, "right velocity")->required();
  riemann->add_option("--sigma", sigma, "p = sigma rho");
  riemann->add_option("--eps", eps, "bisection tolerance");
  riemann->add_option("--xi-min", xi_min);
  riemann->add_option("--xi-max", xi_max);
  riemann->add_option("--xi-count", xi_count);
  riemann->add_option("--output-dir", riemann_dir);

  ConfigOptions emit_opts, sim_opts, conv_opts, rev_opts;
  std::optional<double> emit_time;
  auto* emit = app.add_subcommand("emit-model", "write a closed-form model profile");
  emit_opts.attach(emit);
  emit->add_option_function<double>("--time", [&](double t) { emit_time = t; },
                                    "evaluation time (pure models); default t0");
  auto* simulate = app.add_subcommand("simulate", "evolve a model and write snapshots");
  sim_opts.attach(simulate);
  auto* converge = app.add_subcommand("converge", "mesh-refinement study over levels");
  conv_opts.attach(converge);
  auto* reverse = app.add_subcommand("reverse", "time-reversed FRW-1/TOV run");
  rev_opts.attach(reverse);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfig;
  }

  try {
    if (*riemann) {
      return cmd_riemann(rho_l, v_l, rho_r, v_r, sigma, eps, xi_min, xi_max, xi_count, riemann_dir);
    }
    if (*emit) return cmd_emit_model(emit_opts.resolve(), emit_time);
    if (*simulate) return cmd_simulate(sim_opts.resolve());
    if (*converge) return cmd_converge(conv_opts.resolve());
    if (*reverse) {
      RunConfig cfg;
      cfg.r_min = 0.1;
      cfg.r_max = 20.0;
      cfg.n = 1024;
      cfg.duration = 5.0;
      if (!rev_opts.file.empty()) apply_config(cfg, read_config_file(rev_opts.file));
      apply_config(cfg, rev_opts.flags);
      return cmd_reverse(cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "ligsim: config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ApiError& e) {
    std::cerr << "ligsim: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "ligsim: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
