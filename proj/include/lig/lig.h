#ifndef LIG_LIG_H
#define LIG_LIG_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(LIG_BUILDING)
#    define LIG_API __declspec(dllexport)
#  else
#    define LIG_API __declspec(dllimport)
#  endif
#else
#  define LIG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lig_status {
  LIG_OK = 0,
  LIG_INVALID_ARGUMENT = 1,
  LIG_NEGATIVE_DISCRIMINANT = 2,
  LIG_NONPOSITIVE_DENSITY = 3,
  LIG_NO_CONVERGENCE = 4,
  LIG_NONPHYSICAL_INPUT = 5,
  LIG_SUPERLUMINAL_COORDINATE = 6,
  LIG_OUTSIDE_DOMAIN = 7,
  LIG_HORIZON_ENCOUNTERED = 8,
  LIG_BORDER_NOT_FOUND = 9,
  LIG_GRID_EXHAUSTED = 10,
  LIG_NONPHYSICAL_STATE = 11,
  LIG_SHAPE_MISMATCH = 12,
  LIG_DEGENERATE_FIELD = 13,
  LIG_SUPPORT_VIOLATION = 14,
  LIG_BUFFER_TOO_SMALL = 15,
  LIG_INTERNAL = 99
} lig_status;

LIG_API const char* lig_status_name(lig_status s);
/* Message of the last failed call on this thread; empty after a success. */
LIG_API const char* lig_last_error(void);

typedef struct lig_fluid {
  double rho;
  double v;
} lig_fluid;

typedef struct lig_conserved {
  double u0;
  double u1;
} lig_conserved;

typedef enum lig_wave_kind { LIG_SHOCK = 0, LIG_RAREFACTION = 1 } lig_wave_kind;

typedef struct lig_wave {
  lig_wave_kind kind;
  double beta;
  double lo; /* shock speed, or left edge of the fan */
  double hi;
} lig_wave;

typedef struct lig_fan {
  lig_fluid left;
  lig_fluid middle;
  lig_fluid right;
  lig_wave wave1;
  lig_wave wave2;
  int region; /* 1..4 */
} lig_fan;

typedef struct lig_riemann_options {
  double eps;
  int max_iter;
} lig_riemann_options;

LIG_API lig_riemann_options lig_riemann_options_default(void);

LIG_API lig_status lig_to_conserved(double sigma, lig_fluid f, lig_conserved* out);
LIG_API lig_status lig_from_conserved(double sigma, lig_conserved u, lig_fluid* out);

LIG_API lig_status lig_riemann_solve(double sigma, lig_fluid left, lig_fluid right,
                                     const lig_riemann_options* opt, lig_fan* out);
LIG_API lig_status lig_riemann_sample(double sigma, const lig_fan* fan, double xi, lig_fluid* out);

typedef enum lig_model_kind {
  LIG_FRW1 = 0,
  LIG_FRW2 = 1,
  LIG_TOV = 2,
  LIG_FRW1_TOV = 3,
  LIG_FRW2_TOV = 4
} lig_model_kind;

typedef struct lig_model_params {
  lig_model_kind kind;
  double sigma;
  double t0;   /* pure models only */
  double psi0; /* FRW-2; <= 0 selects sqrt(2 t0) */
  double b0;   /* pure TOV */
  double r0;   /* matched models */
  int reversed;
} lig_model_params;

LIG_API lig_model_params lig_model_params_default(void);

typedef struct lig_match {
  double r0;
  double t0;
  double v0;
  double b0;
  double psi0;
} lig_match;

typedef struct lig_point {
  double rho;
  double v;
  double A;
  double B;
  double M;
} lig_point;

typedef struct lig_model lig_model;

LIG_API lig_status lig_model_create(const lig_model_params* p, lig_model** out);
LIG_API void lig_model_destroy(lig_model* m);
LIG_API lig_status lig_model_match(const lig_model* m, lig_match* out);
/* Closed form at (t, r); matched models only at their start time. */
LIG_API lig_status lig_model_eval(const lig_model* m, double t, double r, lig_point* out);
LIG_API lig_status lig_model_initial(const lig_model* m, double r, lig_point* out);

typedef struct lig_grid {
  double r_min;
  double r_max;
  int n;
} lig_grid;

typedef struct lig_sim_options {
  double eps;
  int max_iter;
  double horizon_a;
  double tov_threshold;
  int track_cones;
  double cone_origin; /* NaN selects r0 */
  int min_cells;
} lig_sim_options;

LIG_API lig_sim_options lig_sim_options_default(void);

typedef struct lig_step_report {
  double t;
  double dt;
  double max_light_speed;
  int regions[4];
  int rematched;
  int boundary_hit;
} lig_step_report;

typedef struct lig_row {
  double r, rho, v, A, B, M, light, mu;
} lig_row;

typedef struct lig_cones {
  double light_left;
  double light_right;
  double sound_left;
  double sound_right;
  unsigned frozen;
} lig_cones;

typedef enum lig_field {
  LIG_FIELD_X = 0,    /* cell centers, n values */
  LIG_FIELD_RHO = 1,
  LIG_FIELD_V = 2,
  LIG_FIELD_U0 = 3,
  LIG_FIELD_U1 = 4,
  LIG_FIELD_EDGE_X = 5, /* left edges, n + 1 values */
  LIG_FIELD_A = 6,
  LIG_FIELD_B = 7,
  LIG_FIELD_M = 8
} lig_field;

typedef struct lig_sim lig_sim;

LIG_API lig_status lig_sim_create(const lig_model* m, const lig_grid* g, const lig_sim_options* opt,
                                  lig_sim** out);
LIG_API void lig_sim_destroy(lig_sim* s);

/* One step, shortened so that t never passes t_end. */
LIG_API lig_status lig_sim_step(lig_sim* s, double t_end, lig_step_report* out);
LIG_API double lig_sim_time(const lig_sim* s);
LIG_API int lig_sim_cells(const lig_sim* s);
LIG_API double lig_sim_dx(const lig_sim* s);

/* Copies a field into buf; *len receives the count. LIG_BUFFER_TOO_SMALL leaves buf untouched. */
LIG_API lig_status lig_sim_field(const lig_sim* s, lig_field f, double* buf, size_t cap, size_t* len);
LIG_API lig_status lig_sim_rows(const lig_sim* s, lig_row* buf, size_t cap, size_t* len);
LIG_API lig_status lig_sim_cones(const lig_sim* s, lig_cones* out);

/* Border cell (1-based); 0 when none is found. */
LIG_API lig_status lig_sim_frw_border(const lig_sim* s, int* cell);
LIG_API lig_status lig_sim_tov_border(const lig_sim* s, int* cell);
LIG_API lig_status lig_sim_black_hole(const lig_sim* s, double* mu, double* r);
LIG_API lig_status lig_sim_rematch_b(const lig_sim* s, double* bt);

LIG_API lig_status lig_sim_chop_right(lig_sim* s);

typedef struct lig_bump {
  double tc;
  double ht;
  double xc;
  double hx;
} lig_bump;

LIG_API lig_status lig_sim_add_probe(lig_sim* s, lig_bump phi, int* id);
LIG_API lig_status lig_sim_probe_residual(const lig_sim* s, int id, double* e0, double* e1);

LIG_API lig_status lig_total_variation(const double* f, size_t n, double* out);
LIG_API lig_status lig_one_norm_error(const double* num, const double* ref, size_t n, size_t first,
                                      size_t last, double dx, double* out);
/* rates[0] is NaN. */
LIG_API lig_status lig_convergence_rates(const double* errors, size_t n, double* rates);
LIG_API lig_status lig_b_affine_remap(const double* b1, size_t n1, const double* b2, size_t n2,
                                      double* out, double* scale);
LIG_API double lig_coordinate_time_map(double t1, double psi0);

typedef enum lig_unit { LIG_UNIT_KM = 0, LIG_UNIT_SEC = 1, LIG_UNIT_MSUN_PER_KM3 = 2 } lig_unit;

LIG_API double lig_units_convert(double value, lig_unit to);

#ifdef __cplusplus
}
#endif

#endif
