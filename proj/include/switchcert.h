/*
 * switchcert - dwell-time certification and exact simulation for switched
 * planar affine systems, with a non-spiking certifier for square-wave-driven
 * linear neuron models.
 *
 * Conventions:
 *   - Every fallible function returns swc_status; SWC_OK means success.
 *   - On failure, swc_last_error() returns a thread-local message describing
 *     the most recent failure on the calling thread.
 *   - Objects created by *_new / functions returning ** handles are owned by
 *     the caller and released with the matching *_free.
 *   - const char* returned from accessors points into the queried object and
 *     stays valid until that object is freed. char** outputs are heap copies
 *     released with swc_string_free.
 */
#ifndef SWITCHCERT_H
#define SWITCHCERT_H

#include <stddef.h>
#include <stdint.h>

#ifndef SWC_API
#  ifdef _WIN32
#    ifdef SWC_BUILD
#      define SWC_API __declspec(dllexport)
#    else
#      define SWC_API __declspec(dllimport)
#    endif
#  else
#    define SWC_API __attribute__((visibility("default")))
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swc_status {
    SWC_OK = 0,
    SWC_ERR_SIGN_CONDITION = 1,   /* a*b*c*d >= 0, including a zero entry */
    SWC_ERR_NOT_HURWITZ = 2,      /* ad - bc <= 0 or a + d >= 0 */
    SWC_ERR_INVALID_LEVELS = 3,   /* k <= 0, k_i < k, or nonpositive decay rate */
    SWC_ERR_WEIGHT_MISMATCH = 4,  /* shared-weight formula on differing weights */
    SWC_ERR_UNKNOWN_MODE = 5,     /* a mode id not present in the table */
    SWC_ERR_NONFINITE_STATE = 6,  /* state left the representable range */
    SWC_ERR_CONFIG = 7,           /* config / CSV parse or validation failure */
    SWC_ERR_IO = 8,               /* unreadable input or unwritable output */
    SWC_ERR_INVALID_ARGUMENT = 9, /* null pointer, bad index, bad parameter */
    SWC_ERR_INTERNAL = 10
} swc_status;

SWC_API const char* swc_last_error(void);
SWC_API const char* swc_version(void);
SWC_API void swc_string_free(char* s);

/* ---- planar modes and closed-form certification quantities ---- */

/* One affine subsystem x' = Ax + B with A = [[a, b], [c, d]]. */
typedef struct swc_mode_params {
    double a, b, c, d;
    double B1, B2;
} swc_mode_params;

/* V(x) = w1 (x1 - center1)^2 + w2 (x2 - center2)^2, decaying at rate eps. */
typedef struct swc_lyapunov {
    double w1, w2;
    double center1, center2;
    double eps;
} swc_lyapunov;

/* Sign condition a*b*c*d < 0 (zero entries rejected) plus Hurwitz. */
SWC_API swc_status swc_validate_mode(const swc_mode_params* m);
SWC_API swc_status swc_equilibrium(const swc_mode_params* m, double out_x[2]);
SWC_API swc_status swc_lyapunov_of(const swc_mode_params* m, swc_lyapunov* out);
SWC_API swc_status swc_lyapunov_value(const swc_lyapunov* v, double x1, double x2, double* out);
/* Residual of A^T P + P A against its closed form; row-major 2x2 output. */
SWC_API swc_status swc_lyapunov_residual(const swc_mode_params* m, double out_matrix[4]);

/* Smallest level whose V_new sublevel set encloses { V_old <= k }. */
SWC_API swc_status swc_enclosing_level_shared(const swc_lyapunov* v_old,
                                              const swc_lyapunov* v_new, double k, double* out);
SWC_API swc_status swc_touching_level_inner(const swc_lyapunov* v_old,
                                            const swc_lyapunov* v_new, double k, double* out);
SWC_API swc_status swc_enclosing_level_general(const swc_lyapunov* v_old,
                                               const swc_lyapunov* v_new, double k, double* out);
/* tau = ln(k_i / k) / eps_new. */
SWC_API swc_status swc_dwell_time(double eps_new, double k, double k_i, double* out);
/* Coarser center-distance bound for entering m_new from a set centered at center_old. */
SWC_API swc_status swc_dwell_time_weak(const swc_mode_params* m_new, const double center_old[2],
                                       const double center_new[2], double k, double* out);

/* ---- exact affine flow ---- */

/* e^{At} for an arbitrary 2x2 matrix (row-major), by discriminant cases. */
SWC_API swc_status swc_matrix_exp(const double A[4], double t, double out[4]);
SWC_API swc_status swc_affine_flow(const swc_mode_params* m, const double x0[2], double t,
                                   double out[2]);
/* First upward crossing of x1 = v_th in (t_lo, t_hi]; *found is 0 or 1. */
SWC_API swc_status swc_detect_crossing(const swc_mode_params* m, const double x0[2], double t_lo,
                                       double t_hi, double v_th, int* found, double* t_cross);

/* ---- mode tables, switching signals, trajectories ---- */

typedef struct swc_modes swc_modes;
SWC_API swc_modes* swc_modes_new(void);
SWC_API void swc_modes_free(swc_modes* table);
SWC_API swc_status swc_modes_add(swc_modes* table, const char* id, const swc_mode_params* m);
SWC_API size_t swc_modes_count(const swc_modes* table);

typedef struct swc_signal swc_signal;
SWC_API swc_signal* swc_signal_new(void);
SWC_API void swc_signal_free(swc_signal* signal);
SWC_API swc_status swc_signal_add(swc_signal* signal, double t, const char* mode_id);
SWC_API swc_status swc_signal_set_horizon(swc_signal* signal, double horizon);
/* (minimal inter-switch gap) / 1000 */
SWC_API swc_status swc_default_dt(const swc_signal* signal, double* out);

typedef struct swc_trajectory swc_trajectory;
SWC_API void swc_trajectory_free(swc_trajectory* traj);
SWC_API size_t swc_trajectory_samples(const swc_trajectory* traj);
SWC_API swc_status swc_trajectory_sample(const swc_trajectory* traj, size_t i, double* t,
                                         double* x1, double* x2, double* v);
SWC_API const char* swc_trajectory_sample_mode(const swc_trajectory* traj, size_t i);
SWC_API size_t swc_trajectory_events(const swc_trajectory* traj);
/* kind: 0 = switch, 1 = reset */
SWC_API swc_status swc_trajectory_event(const swc_trajectory* traj, size_t i, double* t,
                                        int* kind);
SWC_API const char* swc_trajectory_event_from(const swc_trajectory* traj, size_t i);
SWC_API const char* swc_trajectory_event_to(const swc_trajectory* traj, size_t i);

/* Exact sampled simulation. With with_reset nonzero, an upward crossing of
 * x1 = v_th jumps the state to (v_R, h_R) and the run continues in the same
 * mode (this C entry point applies one h_R to every mode). */
SWC_API swc_status swc_simulate(const swc_modes* table, const swc_signal* signal,
                                const double x0[2], double dt, int with_reset, double v_th,
                                double v_R, double h_R, swc_trajectory** out);

/* ---- trapping verification ---- */

typedef struct swc_trap_report swc_trap_report;
SWC_API void swc_trap_report_free(swc_trap_report* report);
SWC_API swc_status swc_verify_trapping(const swc_trajectory* traj, const swc_modes* table,
                                       double k, swc_trap_report** out);
SWC_API int swc_trap_overall(const swc_trap_report* report);
SWC_API size_t swc_trap_switch_checks(const swc_trap_report* report);
SWC_API swc_status swc_trap_switch_check(const swc_trap_report* report, size_t i, double* t,
                                         double* value, double* bound, int* pass);
SWC_API size_t swc_trap_tube_checks(const swc_trap_report* report);
SWC_API swc_status swc_trap_tube_check(const swc_trap_report* report, size_t i, double* t_begin,
                                       double* t_end, double* max_v, double* k_i, int* pass);
SWC_API const char* swc_trap_tube_mode(const swc_trap_report* report, size_t i);

/* ---- minimal dwell schedules ---- */

typedef struct swc_schedule swc_schedule;
SWC_API void swc_schedule_free(swc_schedule* schedule);
/* One entry per consecutive pair of `order`. */
SWC_API swc_status swc_min_dwell_schedule(const swc_modes* table, const char* const* order,
                                          size_t order_len, double k, swc_schedule** out);
SWC_API size_t swc_schedule_count(const swc_schedule* schedule);
SWC_API swc_status swc_schedule_entry(const swc_schedule* schedule, size_t i, double* k_i,
                                      double* tau);
SWC_API const char* swc_schedule_from(const swc_schedule* schedule, size_t i);
SWC_API const char* swc_schedule_to(const swc_schedule* schedule, size_t i);

/* ---- neuron certification ---- */

typedef struct swc_neuron_params {
    double g_p, g_h, m, o_h; /* all positive */
    double I;                /* ON-phase input current, positive */
    double T_I, T_0;         /* phase durations, positive */
    int has_v_th;
    double v_th;
    int has_v_R;
    double v_R;
    int has_h_R;
    double h_R;
} swc_neuron_params;

typedef struct swc_certificate {
    double k;
    double v_I, h_I;
    double k_bar;
    double tau_d;
    double v_bound;
    int dwell_ok;
    int nonspiking_known; /* 0 when v_th was absent; nonspiking_ok is then meaningless */
    int nonspiking_ok;
} swc_certificate;

SWC_API swc_status swc_certify(const swc_neuron_params* p, double k, swc_certificate* out);
/* Table containing the OFF and ON modes (ids "OFF", "ON"). */
SWC_API swc_status swc_neuron_modes(const swc_neuron_params* p, swc_modes** out);
SWC_API swc_status swc_square_wave(const swc_neuron_params* p, int periods, swc_signal** out);
SWC_API swc_status swc_starts_inside(const swc_neuron_params* p, double k, const double x0[2],
                                     int* inside);

/* ---- nonlinear (n-dimensional) framework ---- */

typedef void (*swc_field_fn)(const double* x, double* dx_out, size_t n, void* user);
typedef double (*swc_value_fn)(const double* x, size_t n, void* user);
typedef void (*swc_grad_fn)(const double* x, double* grad_out, size_t n, void* user);
typedef double (*swc_radial_fn)(double r, void* user);

typedef struct swc_nl_system swc_nl_system;
/* grad and alpha_inv may be NULL (finite differences / numeric inversion). */
SWC_API swc_nl_system* swc_nl_new(size_t dim, swc_field_fn field, swc_value_fn lyapunov,
                                  swc_grad_fn grad, swc_radial_fn alpha, swc_radial_fn beta,
                                  swc_radial_fn alpha_inv, const double* equilibrium, double eps,
                                  void* user);
SWC_API void swc_nl_free(swc_nl_system* s);
SWC_API swc_status swc_nl_from_mode(const swc_mode_params* m, swc_nl_system** out);
SWC_API swc_status swc_nl_enclosing_level(const swc_nl_system* s_old, const swc_nl_system* s_new,
                                          double k, double* out);
SWC_API swc_status swc_nl_dwell_time(const swc_nl_system* s_new, double k, double k_i,
                                     double* out);

typedef struct swc_nl_trajectory swc_nl_trajectory;
SWC_API void swc_nl_trajectory_free(swc_nl_trajectory* traj);
SWC_API size_t swc_nl_trajectory_samples(const swc_nl_trajectory* traj);
/* x_out must hold the system dimension. */
SWC_API swc_status swc_nl_trajectory_sample(const swc_nl_trajectory* traj, size_t i, double* t,
                                            double* x_out, double* v);
SWC_API swc_status swc_nl_integrate(const swc_nl_system* s, const double* x0, double horizon,
                                    double dt, swc_nl_trajectory** out);
/* Sandwich/decay spot checks on n_points random states in [lo, hi]. */
SWC_API swc_status swc_nl_validate(const swc_nl_system* s, const double* lo, const double* hi,
                                   int n_points, uint64_t seed, int* ok, double* worst_sandwich,
                                   double* worst_decay);

/* ---- brute-force oracles ---- */

SWC_API swc_status swc_boundary_max(const swc_lyapunov* v_old, double k,
                                    const swc_lyapunov* v_new, int n_samples, double* out);
SWC_API swc_status swc_fd_decay_check(const swc_mode_params* m, int n_points, uint64_t seed,
                                      double* worst, double* best);
SWC_API swc_status swc_inclusion_check(const swc_lyapunov* inner_v, double inner_k,
                                       const swc_lyapunov* outer_v, double outer_k,
                                       int n_samples, int* ok, double* worst_violation);

typedef struct swc_rng swc_rng;
SWC_API swc_rng* swc_rng_new(uint64_t seed);
SWC_API void swc_rng_free(swc_rng* rng);
SWC_API swc_status swc_random_mode(swc_rng* rng, swc_mode_params* out);
SWC_API swc_status swc_random_mode_shared(swc_rng* rng, const swc_mode_params* base,
                                          swc_mode_params* out);

/* ---- command layer (the CLI is a thin wrapper over these) ----
 *
 * Each call runs one tool command against a JSON config file. The semantic
 * result is *exit_code (0 pass, 1 analysis failure, 2 config error, 3
 * unwritable output); *output receives the JSON payload for stdout and
 * *diagnostic any human-readable stderr text (either may be an empty
 * string). The swc_status return is SWC_OK unless the call itself was
 * malformed (null pointers). */
SWC_API swc_status swc_cmd_certify(const char* config_path, int* exit_code, char** output,
                                   char** diagnostic);
SWC_API swc_status swc_cmd_simulate(const char* config_path, const char* out_csv,
                                    const char* out_svg, int* exit_code, char** output,
                                    char** diagnostic);
SWC_API swc_status swc_cmd_verify(const char* config_path, const char* traj_csv, int* exit_code,
                                  char** output, char** diagnostic);
SWC_API swc_status swc_cmd_dwell(const char* config_path, int* exit_code, char** output,
                                 char** diagnostic);
SWC_API swc_status swc_cmd_oracle(const char* config_path, int samples, int has_seed,
                                  uint64_t seed, int* exit_code, char** output,
                                  char** diagnostic);
SWC_API swc_status swc_cmd_sweep(const char* config_path, int* exit_code, char** output,
                                 char** diagnostic);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SWITCHCERT_H */
