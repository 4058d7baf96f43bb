#include <switchcert.h>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/commands.hpp"
#include "core/errors.hpp"
#include "core/neuron.hpp"
#include "core/nonlinear.hpp"
#include "core/oracle.hpp"
#include "core/planar.hpp"
#include "core/sim.hpp"

using namespace switchcert;

/* Opaque handle definitions. */
struct swc_modes {
    sim::ModeTable table;
};
struct swc_signal {
    sim::SwitchingSignal signal;
};
struct swc_trajectory {
    sim::Trajectory traj;
};
struct swc_trap_report {
    sim::TrapReport report;
};
struct swc_schedule {
    std::vector<planar::ScheduleEntry> entries;
};
struct swc_nl_system {
    nonlinear::Subsystem sys;
};
struct swc_nl_trajectory {
    std::vector<nonlinear::SampleN> samples;
};
struct swc_rng {
    std::mt19937_64 rng;
};

namespace {

thread_local std::string g_last_error;

swc_status to_status(errc code) {
    switch (code) {
        case errc::sign_condition: return SWC_ERR_SIGN_CONDITION;
        case errc::not_hurwitz: return SWC_ERR_NOT_HURWITZ;
        case errc::invalid_levels: return SWC_ERR_INVALID_LEVELS;
        case errc::weight_mismatch: return SWC_ERR_WEIGHT_MISMATCH;
        case errc::unknown_mode: return SWC_ERR_UNKNOWN_MODE;
        case errc::nonfinite_state: return SWC_ERR_NONFINITE_STATE;
        case errc::config_error: return SWC_ERR_CONFIG;
        case errc::io_error: return SWC_ERR_IO;
        case errc::invalid_argument: return SWC_ERR_INVALID_ARGUMENT;
    }
    return SWC_ERR_INTERNAL;
}

swc_status fail_arg(const char* what) {
    g_last_error = what;
    return SWC_ERR_INVALID_ARGUMENT;
}

template <typename Fn>
swc_status wrap(Fn&& fn) {
    try {
        fn();
        return SWC_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SWC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SWC_ERR_INTERNAL;
    }
}

planar::Mode to_mode(const swc_mode_params& m, const char* id = "mode") {
    return {id, m.a, m.b, m.c, m.d, {m.B1, m.B2}};
}

planar::Lyapunov to_lyapunov(const swc_lyapunov& v) {
    return {v.w1, v.w2, {v.center1, v.center2}, v.eps};
}

void from_lyapunov(const planar::Lyapunov& in, swc_lyapunov* out) {
    out->w1 = in.w1;
    out->w2 = in.w2;
    out->center1 = in.center.x1;
    out->center2 = in.center.x2;
    out->eps = in.eps;
}

neuron::Params to_params(const swc_neuron_params& p) {
    neuron::Params q;
    q.g_p = p.g_p;
    q.g_h = p.g_h;
    q.m = p.m;
    q.o_h = p.o_h;
    q.I = p.I;
    q.T_I = p.T_I;
    q.T_0 = p.T_0;
    if (p.has_v_th) q.v_th = p.v_th;
    if (p.has_v_R) q.v_R = p.v_R;
    if (p.has_h_R) q.h_R = p.h_R;
    return q;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

swc_status run_command(const commands::Result& r, int* exit_code, char** output,
                       char** diagnostic) {
    if (!exit_code || !output || !diagnostic) return fail_arg("null output pointer");
    *exit_code = r.exit_code;
    *output = dup_string(r.output);
    *diagnostic = dup_string(r.diagnostic);
    return SWC_OK;
}

}  // namespace

extern "C" {

const char* swc_last_error(void) { return g_last_error.c_str(); }

const char* swc_version(void) { return "1.0.0"; }

void swc_string_free(char* s) { std::free(s); }

/* ---- planar closed forms ---- */

swc_status swc_validate_mode(const swc_mode_params* m) {
    if (!m) return fail_arg("null mode");
    return wrap([&] { planar::validate_mode(to_mode(*m)); });
}

swc_status swc_equilibrium(const swc_mode_params* m, double out_x[2]) {
    if (!m || !out_x) return fail_arg("null argument");
    return wrap([&] {
        const planar::Mode mode = planar::validate_mode(to_mode(*m));
        const Vec2 x = planar::equilibrium(mode);
        out_x[0] = x.x1;
        out_x[1] = x.x2;
    });
}

swc_status swc_lyapunov_of(const swc_mode_params* m, swc_lyapunov* out) {
    if (!m || !out) return fail_arg("null argument");
    return wrap([&] { from_lyapunov(planar::lyapunov(to_mode(*m)), out); });
}

swc_status swc_lyapunov_value(const swc_lyapunov* v, double x1, double x2, double* out) {
    if (!v || !out) return fail_arg("null argument");
    return wrap([&] { *out = to_lyapunov(*v).value({x1, x2}); });
}

swc_status swc_lyapunov_residual(const swc_mode_params* m, double out_matrix[4]) {
    if (!m || !out_matrix) return fail_arg("null argument");
    return wrap([&] {
        const Mat2 r = planar::lyapunov_residual(to_mode(*m));
        out_matrix[0] = r.a;
        out_matrix[1] = r.b;
        out_matrix[2] = r.c;
        out_matrix[3] = r.d;
    });
}

swc_status swc_enclosing_level_shared(const swc_lyapunov* v_old, const swc_lyapunov* v_new,
                                      double k, double* out) {
    if (!v_old || !v_new || !out) return fail_arg("null argument");
    return wrap(
        [&] { *out = planar::enclosing_level_shared(to_lyapunov(*v_old), to_lyapunov(*v_new), k); });
}

swc_status swc_touching_level_inner(const swc_lyapunov* v_old, const swc_lyapunov* v_new,
                                    double k, double* out) {
    if (!v_old || !v_new || !out) return fail_arg("null argument");
    return wrap(
        [&] { *out = planar::touching_level_inner(to_lyapunov(*v_old), to_lyapunov(*v_new), k); });
}

swc_status swc_enclosing_level_general(const swc_lyapunov* v_old, const swc_lyapunov* v_new,
                                       double k, double* out) {
    if (!v_old || !v_new || !out) return fail_arg("null argument");
    return wrap(
        [&] { *out = planar::enclosing_level_general(to_lyapunov(*v_old), to_lyapunov(*v_new), k); });
}

swc_status swc_dwell_time(double eps_new, double k, double k_i, double* out) {
    if (!out) return fail_arg("null argument");
    return wrap([&] { *out = planar::dwell_time(eps_new, k, k_i); });
}

swc_status swc_dwell_time_weak(const swc_mode_params* m_new, const double center_old[2],
                               const double center_new[2], double k, double* out) {
    if (!m_new || !center_old || !center_new || !out) return fail_arg("null argument");
    return wrap([&] {
        *out = planar::dwell_time_weak(planar::validate_mode(to_mode(*m_new)),
                                       {center_old[0], center_old[1]},
                                       {center_new[0], center_new[1]}, k);
    });
}

/* ---- exact affine flow ---- */

swc_status swc_matrix_exp(const double A[4], double t, double out[4]) {
    if (!A || !out) return fail_arg("null argument");
    return wrap([&] {
        const Mat2 e = sim::matrix_exp({A[0], A[1], A[2], A[3]}, t);
        out[0] = e.a;
        out[1] = e.b;
        out[2] = e.c;
        out[3] = e.d;
    });
}

swc_status swc_affine_flow(const swc_mode_params* m, const double x0[2], double t,
                           double out[2]) {
    if (!m || !x0 || !out) return fail_arg("null argument");
    return wrap([&] {
        const planar::Mode mode = planar::validate_mode(to_mode(*m));
        const Vec2 x = sim::affine_flow(mode, {x0[0], x0[1]}, t);
        out[0] = x.x1;
        out[1] = x.x2;
    });
}

swc_status swc_detect_crossing(const swc_mode_params* m, const double x0[2], double t_lo,
                               double t_hi, double v_th, int* found, double* t_cross) {
    if (!m || !x0 || !found || !t_cross) return fail_arg("null argument");
    return wrap([&] {
        const planar::Mode mode = planar::validate_mode(to_mode(*m));
        const auto hit = sim::detect_crossing(mode, {x0[0], x0[1]}, t_lo, t_hi, v_th);
        *found = hit.has_value() ? 1 : 0;
        *t_cross = hit.value_or(0.0);
    });
}

/* ---- tables, signals, trajectories ---- */

swc_modes* swc_modes_new(void) { return new (std::nothrow) swc_modes; }

void swc_modes_free(swc_modes* table) { delete table; }

swc_status swc_modes_add(swc_modes* table, const char* id, const swc_mode_params* m) {
    if (!table || !id || !m) return fail_arg("null argument");
    return wrap([&] {
        planar::Mode mode = planar::validate_mode(to_mode(*m, id));
        for (const planar::Mode& existing : table->table)
            if (existing.id == mode.id)
                throw Error(errc::invalid_argument, "duplicate mode id '" + mode.id + "'");
        table->table.push_back(std::move(mode));
    });
}

size_t swc_modes_count(const swc_modes* table) { return table ? table->table.size() : 0; }

swc_signal* swc_signal_new(void) { return new (std::nothrow) swc_signal; }

void swc_signal_free(swc_signal* signal) { delete signal; }

swc_status swc_signal_add(swc_signal* signal, double t, const char* mode_id) {
    if (!signal || !mode_id) return fail_arg("null argument");
    signal->signal.switches.push_back({t, mode_id});
    return SWC_OK;
}

swc_status swc_signal_set_horizon(swc_signal* signal, double horizon) {
    if (!signal) return fail_arg("null signal");
    signal->signal.horizon = horizon;
    return SWC_OK;
}

swc_status swc_default_dt(const swc_signal* signal, double* out) {
    if (!signal || !out) return fail_arg("null argument");
    return wrap([&] { *out = sim::default_dt(signal->signal); });
}

void swc_trajectory_free(swc_trajectory* traj) { delete traj; }

size_t swc_trajectory_samples(const swc_trajectory* traj) {
    return traj ? traj->traj.samples.size() : 0;
}

swc_status swc_trajectory_sample(const swc_trajectory* traj, size_t i, double* t, double* x1,
                                 double* x2, double* v) {
    if (!traj || !t || !x1 || !x2 || !v) return fail_arg("null argument");
    if (i >= traj->traj.samples.size()) return fail_arg("sample index out of range");
    const sim::Sample& s = traj->traj.samples[i];
    *t = s.t;
    *x1 = s.x.x1;
    *x2 = s.x.x2;
    *v = s.v;
    return SWC_OK;
}

const char* swc_trajectory_sample_mode(const swc_trajectory* traj, size_t i) {
    if (!traj || i >= traj->traj.samples.size()) return nullptr;
    return traj->traj.samples[i].mode.c_str();
}

size_t swc_trajectory_events(const swc_trajectory* traj) {
    return traj ? traj->traj.events.size() : 0;
}

swc_status swc_trajectory_event(const swc_trajectory* traj, size_t i, double* t, int* kind) {
    if (!traj || !t || !kind) return fail_arg("null argument");
    if (i >= traj->traj.events.size()) return fail_arg("event index out of range");
    const sim::Event& e = traj->traj.events[i];
    *t = e.t;
    *kind = e.kind == sim::EventKind::Switch ? 0 : 1;
    return SWC_OK;
}

const char* swc_trajectory_event_from(const swc_trajectory* traj, size_t i) {
    if (!traj || i >= traj->traj.events.size()) return nullptr;
    return traj->traj.events[i].from.c_str();
}

const char* swc_trajectory_event_to(const swc_trajectory* traj, size_t i) {
    if (!traj || i >= traj->traj.events.size()) return nullptr;
    return traj->traj.events[i].to.c_str();
}

swc_status swc_simulate(const swc_modes* table, const swc_signal* signal, const double x0[2],
                        double dt, int with_reset, double v_th, double v_R, double h_R,
                        swc_trajectory** out) {
    if (!table || !signal || !x0 || !out) return fail_arg("null argument");
    return wrap([&] {
        std::optional<sim::ResetRule> reset;
        if (with_reset) {
            sim::ResetRule rule;
            rule.v_th = v_th;
            rule.v_R = v_R;
            for (const planar::Mode& m : table->table) rule.h_R[m.id] = h_R;
            reset = std::move(rule);
        }
        auto traj = std::make_unique<swc_trajectory>();
        traj->traj = sim::simulate(table->table, signal->signal, {x0[0], x0[1]}, dt, reset);
        *out = traj.release();
    });
}

/* ---- trapping verification ---- */

void swc_trap_report_free(swc_trap_report* report) { delete report; }

swc_status swc_verify_trapping(const swc_trajectory* traj, const swc_modes* table, double k,
                               swc_trap_report** out) {
    if (!traj || !table || !out) return fail_arg("null argument");
    return wrap([&] {
        auto report = std::make_unique<swc_trap_report>();
        report->report = sim::verify_trapping(traj->traj, table->table, k);
        *out = report.release();
    });
}

int swc_trap_overall(const swc_trap_report* report) {
    return report && report->report.overall ? 1 : 0;
}

size_t swc_trap_switch_checks(const swc_trap_report* report) {
    return report ? report->report.switch_checks.size() : 0;
}

swc_status swc_trap_switch_check(const swc_trap_report* report, size_t i, double* t,
                                 double* value, double* bound, int* pass) {
    if (!report || !t || !value || !bound || !pass) return fail_arg("null argument");
    if (i >= report->report.switch_checks.size()) return fail_arg("check index out of range");
    const sim::SwitchCheck& c = report->report.switch_checks[i];
    *t = c.t;
    *value = c.value;
    *bound = c.bound;
    *pass = c.pass ? 1 : 0;
    return SWC_OK;
}

size_t swc_trap_tube_checks(const swc_trap_report* report) {
    return report ? report->report.tube_checks.size() : 0;
}

swc_status swc_trap_tube_check(const swc_trap_report* report, size_t i, double* t_begin,
                               double* t_end, double* max_v, double* k_i, int* pass) {
    if (!report || !t_begin || !t_end || !max_v || !k_i || !pass)
        return fail_arg("null argument");
    if (i >= report->report.tube_checks.size()) return fail_arg("check index out of range");
    const sim::TubeCheck& c = report->report.tube_checks[i];
    *t_begin = c.t_begin;
    *t_end = c.t_end;
    *max_v = c.max_v;
    *k_i = c.k_i;
    *pass = c.pass ? 1 : 0;
    return SWC_OK;
}

const char* swc_trap_tube_mode(const swc_trap_report* report, size_t i) {
    if (!report || i >= report->report.tube_checks.size()) return nullptr;
    return report->report.tube_checks[i].mode.c_str();
}

/* ---- minimal dwell schedules ---- */

void swc_schedule_free(swc_schedule* schedule) { delete schedule; }

swc_status swc_min_dwell_schedule(const swc_modes* table, const char* const* order,
                                  size_t order_len, double k, swc_schedule** out) {
    if (!table || !order || !out) return fail_arg("null argument");
    return wrap([&] {
        std::vector<std::string> ids;
        ids.reserve(order_len);
        for (size_t i = 0; i < order_len; ++i) {
            if (!order[i]) throw Error(errc::invalid_argument, "null id in order");
            ids.emplace_back(order[i]);
        }
        auto schedule = std::make_unique<swc_schedule>();
        schedule->entries = planar::min_dwell_schedule(table->table, ids, k);
        *out = schedule.release();
    });
}

size_t swc_schedule_count(const swc_schedule* schedule) {
    return schedule ? schedule->entries.size() : 0;
}

swc_status swc_schedule_entry(const swc_schedule* schedule, size_t i, double* k_i, double* tau) {
    if (!schedule || !k_i || !tau) return fail_arg("null argument");
    if (i >= schedule->entries.size()) return fail_arg("entry index out of range");
    *k_i = schedule->entries[i].k_i;
    *tau = schedule->entries[i].tau;
    return SWC_OK;
}

const char* swc_schedule_from(const swc_schedule* schedule, size_t i) {
    if (!schedule || i >= schedule->entries.size()) return nullptr;
    return schedule->entries[i].from.c_str();
}

const char* swc_schedule_to(const swc_schedule* schedule, size_t i) {
    if (!schedule || i >= schedule->entries.size()) return nullptr;
    return schedule->entries[i].to.c_str();
}

/* ---- neuron certification ---- */

swc_status swc_certify(const swc_neuron_params* p, double k, swc_certificate* out) {
    if (!p || !out) return fail_arg("null argument");
    return wrap([&] {
        const neuron::Certificate c = neuron::certify(to_params(*p), k);
        out->k = c.k;
        out->v_I = c.v_I;
        out->h_I = c.h_I;
        out->k_bar = c.k_bar;
        out->tau_d = c.tau_d;
        out->v_bound = c.v_bound;
        out->dwell_ok = c.dwell_ok ? 1 : 0;
        out->nonspiking_known = c.nonspiking_ok.has_value() ? 1 : 0;
        out->nonspiking_ok = c.nonspiking_ok.value_or(false) ? 1 : 0;
    });
}

swc_status swc_neuron_modes(const swc_neuron_params* p, swc_modes** out) {
    if (!p || !out) return fail_arg("null argument");
    return wrap([&] {
        const auto [off, on] = neuron::modes(to_params(*p));
        auto table = std::make_unique<swc_modes>();
        table->table = {off, on};
        *out = table.release();
    });
}

swc_status swc_square_wave(const swc_neuron_params* p, int periods, swc_signal** out) {
    if (!p || !out) return fail_arg("null argument");
    return wrap([&] {
        auto signal = std::make_unique<swc_signal>();
        signal->signal = neuron::square_wave_signal(to_params(*p), periods);
        *out = signal.release();
    });
}

swc_status swc_starts_inside(const swc_neuron_params* p, double k, const double x0[2],
                             int* inside) {
    if (!p || !x0 || !inside) return fail_arg("null argument");
    return wrap([&] {
        *inside = neuron::starts_inside(to_params(*p), k, {x0[0], x0[1]}) ? 1 : 0;
    });
}

/* ---- nonlinear framework ---- */

swc_nl_system* swc_nl_new(size_t dim, swc_field_fn field, swc_value_fn lyapunov,
                          swc_grad_fn grad, swc_radial_fn alpha, swc_radial_fn beta,
                          swc_radial_fn alpha_inv, const double* equilibrium, double eps,
                          void* user) {
    if (dim == 0 || !field || !lyapunov || !alpha || !beta || !equilibrium) {
        g_last_error = "swc_nl_new: dim, field, lyapunov, alpha, beta, equilibrium are required";
        return nullptr;
    }
    auto handle = std::make_unique<swc_nl_system>();
    nonlinear::Subsystem& s = handle->sys;
    s.field = [field, user](const nonlinear::VecN& x) {
        nonlinear::VecN dx(x.size());
        field(x.data(), dx.data(), x.size(), user);
        return dx;
    };
    s.lyapunov = [lyapunov, user](const nonlinear::VecN& x) {
        return lyapunov(x.data(), x.size(), user);
    };
    if (grad) {
        s.grad = [grad, user](const nonlinear::VecN& x) {
            nonlinear::VecN g(x.size());
            grad(x.data(), g.data(), x.size(), user);
            return g;
        };
    }
    s.comparison.alpha = [alpha, user](double r) { return alpha(r, user); };
    s.comparison.beta = [beta, user](double r) { return beta(r, user); };
    if (alpha_inv)
        s.comparison.alpha_inv = [alpha_inv, user](double level) {
            return alpha_inv(level, user);
        };
    s.equilibrium.assign(equilibrium, equilibrium + dim);
    s.eps = eps;
    return handle.release();
}

void swc_nl_free(swc_nl_system* s) { delete s; }

swc_status swc_nl_from_mode(const swc_mode_params* m, swc_nl_system** out) {
    if (!m || !out) return fail_arg("null argument");
    return wrap([&] {
        auto handle = std::make_unique<swc_nl_system>();
        handle->sys = nonlinear::from_mode(to_mode(*m));
        *out = handle.release();
    });
}

swc_status swc_nl_enclosing_level(const swc_nl_system* s_old, const swc_nl_system* s_new,
                                  double k, double* out) {
    if (!s_old || !s_new || !out) return fail_arg("null argument");
    return wrap([&] { *out = nonlinear::enclosing_level(s_old->sys, s_new->sys, k); });
}

swc_status swc_nl_dwell_time(const swc_nl_system* s_new, double k, double k_i, double* out) {
    if (!s_new || !out) return fail_arg("null argument");
    return wrap([&] { *out = nonlinear::dwell_time(s_new->sys, k, k_i); });
}

void swc_nl_trajectory_free(swc_nl_trajectory* traj) { delete traj; }

size_t swc_nl_trajectory_samples(const swc_nl_trajectory* traj) {
    return traj ? traj->samples.size() : 0;
}

swc_status swc_nl_trajectory_sample(const swc_nl_trajectory* traj, size_t i, double* t,
                                    double* x_out, double* v) {
    if (!traj || !t || !x_out || !v) return fail_arg("null argument");
    if (i >= traj->samples.size()) return fail_arg("sample index out of range");
    const nonlinear::SampleN& s = traj->samples[i];
    *t = s.t;
    std::memcpy(x_out, s.x.data(), s.x.size() * sizeof(double));
    *v = s.v;
    return SWC_OK;
}

swc_status swc_nl_integrate(const swc_nl_system* s, const double* x0, double horizon, double dt,
                            swc_nl_trajectory** out) {
    if (!s || !x0 || !out) return fail_arg("null argument");
    return wrap([&] {
        auto traj = std::make_unique<swc_nl_trajectory>();
        const nonlinear::VecN start(x0, x0 + s->sys.dim());
        traj->samples = nonlinear::integrate(s->sys, start, horizon, dt);
        *out = traj.release();
    });
}

swc_status swc_nl_validate(const swc_nl_system* s, const double* lo, const double* hi,
                           int n_points, uint64_t seed, int* ok, double* worst_sandwich,
                           double* worst_decay) {
    if (!s || !lo || !hi || !ok || !worst_sandwich || !worst_decay)
        return fail_arg("null argument");
    return wrap([&] {
        const nonlinear::VecN lo_v(lo, lo + s->sys.dim());
        const nonlinear::VecN hi_v(hi, hi + s->sys.dim());
        const nonlinear::ValidationReport r =
            nonlinear::validate_sampled(s->sys, lo_v, hi_v, n_points, seed);
        *ok = r.ok ? 1 : 0;
        *worst_sandwich = r.worst_sandwich;
        *worst_decay = r.worst_decay;
    });
}

/* ---- oracles ---- */

swc_status swc_boundary_max(const swc_lyapunov* v_old, double k, const swc_lyapunov* v_new,
                            int n_samples, double* out) {
    if (!v_old || !v_new || !out) return fail_arg("null argument");
    return wrap(
        [&] { *out = oracle::boundary_max(to_lyapunov(*v_old), k, to_lyapunov(*v_new), n_samples); });
}

swc_status swc_fd_decay_check(const swc_mode_params* m, int n_points, uint64_t seed,
                              double* worst, double* best) {
    if (!m || !worst || !best) return fail_arg("null argument");
    return wrap([&] {
        const oracle::DecayCheck c = oracle::fd_decay_check(to_mode(*m), n_points, seed);
        *worst = c.worst;
        *best = c.best;
    });
}

swc_status swc_inclusion_check(const swc_lyapunov* inner_v, double inner_k,
                               const swc_lyapunov* outer_v, double outer_k, int n_samples,
                               int* ok, double* worst_violation) {
    if (!inner_v || !outer_v || !ok || !worst_violation) return fail_arg("null argument");
    return wrap([&] {
        const oracle::InclusionCheck c = oracle::inclusion_check(
            {to_lyapunov(*inner_v), inner_k}, {to_lyapunov(*outer_v), outer_k}, n_samples);
        *ok = c.ok ? 1 : 0;
        *worst_violation = c.worst_violation;
    });
}

swc_rng* swc_rng_new(uint64_t seed) {
    auto rng = new (std::nothrow) swc_rng;
    if (rng) rng->rng.seed(seed);
    return rng;
}

void swc_rng_free(swc_rng* rng) { delete rng; }

swc_status swc_random_mode(swc_rng* rng, swc_mode_params* out) {
    if (!rng || !out) return fail_arg("null argument");
    return wrap([&] {
        const planar::Mode m = oracle::random_mode(rng->rng, "random");
        *out = {m.a, m.b, m.c, m.d, m.B.x1, m.B.x2};
    });
}

swc_status swc_random_mode_shared(swc_rng* rng, const swc_mode_params* base,
                                  swc_mode_params* out) {
    if (!rng || !base || !out) return fail_arg("null argument");
    return wrap([&] {
        const planar::Mode m =
            oracle::random_mode_shared(rng->rng, "random", to_mode(*base, "base"));
        *out = {m.a, m.b, m.c, m.d, m.B.x1, m.B.x2};
    });
}

/* ---- command layer ---- */

swc_status swc_cmd_certify(const char* config_path, int* exit_code, char** output,
                           char** diagnostic) {
    if (!config_path) return fail_arg("null config path");
    return run_command(commands::certify(config_path), exit_code, output, diagnostic);
}

swc_status swc_cmd_simulate(const char* config_path, const char* out_csv, const char* out_svg,
                            int* exit_code, char** output, char** diagnostic) {
    if (!config_path || !out_csv) return fail_arg("null path");
    std::optional<std::string> svg;
    if (out_svg) svg = out_svg;
    return run_command(commands::simulate(config_path, out_csv, svg), exit_code, output,
                       diagnostic);
}

swc_status swc_cmd_verify(const char* config_path, const char* traj_csv, int* exit_code,
                          char** output, char** diagnostic) {
    if (!config_path || !traj_csv) return fail_arg("null path");
    return run_command(commands::verify(config_path, traj_csv), exit_code, output, diagnostic);
}

swc_status swc_cmd_dwell(const char* config_path, int* exit_code, char** output,
                         char** diagnostic) {
    if (!config_path) return fail_arg("null config path");
    return run_command(commands::dwell(config_path), exit_code, output, diagnostic);
}

swc_status swc_cmd_oracle(const char* config_path, int samples, int has_seed, uint64_t seed,
                          int* exit_code, char** output, char** diagnostic) {
    if (!config_path) return fail_arg("null config path");
    std::optional<unsigned long long> seed_opt;
    if (has_seed) seed_opt = seed;
    return run_command(commands::oracle_run(config_path, samples, seed_opt), exit_code, output,
                       diagnostic);
}

swc_status swc_cmd_sweep(const char* config_path, int* exit_code, char** output,
                         char** diagnostic) {
    if (!config_path) return fail_arg("null config path");
    return run_command(commands::sweep(config_path), exit_code, output, diagnostic);
}

} /* extern "C" */
