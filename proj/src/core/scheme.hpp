#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "models.hpp"
#include "riemann.hpp"

namespace lig {

struct Grid {
  double r_min;
  double r_max;
  int n;

  double dx() const { return (r_max - r_min) / (n - 1); }
  // Cell centers x_i for i = 0..n+1 (0 and n+1 are ghosts).
  double x(int i) const { return r_min + (i - 1) * dx(); }
  // Left edge x_{i-1/2} of cell i.
  double edge(int i) const { return x(i) - 0.5 * dx(); }
};

struct SimOptions {
  RiemannOptions riemann;
  double horizon_A = 1e-6;
  double tov_threshold = 0.01;
  bool track_cones = false;
  // Origin of the cones; NaN selects the matched model's r0.
  double cone_origin = std::numeric_limits<double>::quiet_NaN();
  int min_cells = 8;
};

struct Cell {
  Conserved u;
  Fluid f;
};

struct Edge {
  double A;
  double B;
  double M;
};

struct StepReport {
  double t = 0.0;
  double dt = 0.0;
  double max_light_speed = 0.0;
  // Number of interface Riemann problems per region I..IV.
  std::array<int, 4> regions{};
  bool rematched = false;
  // The TOV border detector fired at the last interior cell.
  bool boundary_hit = false;
};

// One row of emitted plot data at a cell center.
struct Row {
  double r, rho, v, A, B, M, light, mu;
};

struct Residual {
  double e0;
  double e1;
};

Conserved metric_flux(const MetricPoint& m, Fluid f, const Eos& eos);

Conserved godunov_cell_update(Conserved uc, Fluid fc, Fluid left_star, Fluid right_star,
                              const MetricPoint& left_edge, const MetricPoint& right_edge,
                              double dt, double dx, const Eos& eos);

Conserved source_G(const MetricPoint& m, Fluid f, double x, const Eos& eos);
Conserved source_g(const MetricPoint& m, Fluid f, double x, const Eos& eos);

// Throws Errc::nonphysical_state when the increment leaves the physical range.
Conserved ode_step(Conserved ubar, const MetricPoint& left_edge, const MetricPoint& right_edge,
                   double x, double dt, const Eos& eos);

class Simulation {
 public:
  using Hook = std::function<void(const Simulation&, const StepReport&)>;

  Simulation(const Model& model, const Grid& grid, const SimOptions& opt = {});

  const Model& model() const { return model_; }
  const Eos& eos() const { return model_.eos(); }
  const Grid& grid() const { return grid_; }
  const SimOptions& options() const { return opt_; }
  int n() const { return grid_.n; }
  double t() const { return t_; }
  double dx() const { return grid_.dx(); }

  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<double> cell_x() const;
  std::vector<double> edge_x() const;
  std::vector<double> velocities() const;
  std::vector<Row> rows() const;

  double cfl_dt() const;
  // Advances one step, shortened so that t never passes t_end.
  StepReport step(double t_end);
  // Steps until t_end; the hook runs after every step.
  void run(double t_end, const Hook& hook = {});

  // Border cells from the velocity detectors (1-based cell index).
  std::optional<int> frw_border_cell() const;
  std::optional<int> tov_border_cell() const;
  // Maximum of 2M/x over the edges and the radius where it occurs.
  std::pair<double, double> black_hole_number() const;

  double rematched_B() const { return Bt_; }
  double right_ghost_B() const;
  void rematch_tov_timescale();

  void chop_right();
  bool chopping() const { return chopping_; }

  const Cones& cones() const { return cones_; }

  int add_probe(const Bump& phi);
  Residual residual(int id) const;

 private:
  struct Probe {
    Bump phi;
    Residual sum;
  };

  void refresh_left();
  void refresh_right();
  void update_mass_metric();
  void advance_cones(double dt);
  void accumulate_probes(double dt);
  MetricPoint center_metric(int i) const;
  Residual slice_term(const Bump& phi) const;

  Model model_;
  Grid grid_;
  SimOptions opt_;
  double t_;
  double Bt_;
  bool chopping_ = false;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  std::vector<Fluid> star_;
  Cones cones_;
  std::vector<Probe> probes_;
};

}  // namespace lig
