// Exercises the shared library through its C surface only: this file must
// compile with nothing but the public header (plus the test framework).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include <switchcert.h>

using doctest::Approx;

namespace {

const swc_mode_params kOn1{-0.75, 0.15, -1.0, -0.35, 1.0, 0.0};
const swc_mode_params kOff1{-0.75, 0.15, -1.0, -0.35, 0.0, 0.0};

swc_neuron_params set1() {
    swc_neuron_params p{};
    p.g_p = 0.75;
    p.g_h = 0.15;
    p.m = 1.0;
    p.o_h = 0.35;
    p.I = 1.0;
    p.T_I = 3.84;
    p.T_0 = 3.84;
    return p;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/switchcert_capi_" + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << content;
    return path;
}

/* 1-D test system x' = -x with V = x^2 for the callback-based interface. */
void field_1d(const double* x, double* dx, size_t, void*) { dx[0] = -x[0]; }
double lyap_1d(const double* x, size_t, void*) { return x[0] * x[0]; }
void grad_1d(const double* x, double* g, size_t, void*) { g[0] = 2.0 * x[0]; }
double alpha_1d(double r, void*) { return r * r; }

}  // namespace

TEST_CASE("version and error reporting") {
    CHECK(swc_version() != nullptr);
    CHECK(swc_validate_mode(nullptr) == SWC_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(swc_last_error()) > 0);
}

TEST_CASE("mode validation statuses") {
    CHECK(swc_validate_mode(&kOn1) == SWC_OK);

    swc_mode_params sign{-1.0, 1.0, 1.0, -1.0, 0.0, 0.0};
    CHECK(swc_validate_mode(&sign) == SWC_ERR_SIGN_CONDITION);

    swc_mode_params hurwitz{1.0, 2.0, -3.0, 0.5, 0.0, 0.0};
    CHECK(swc_validate_mode(&hurwitz) == SWC_ERR_NOT_HURWITZ);
}

TEST_CASE("closed-form planar surface") {
    double eq[2];
    REQUIRE(swc_equilibrium(&kOn1, eq) == SWC_OK);
    CHECK(eq[0] == Approx(0.84848484848484848).epsilon(1e-14));
    CHECK(eq[1] == Approx(-2.4242424242424242).epsilon(1e-14));

    swc_lyapunov v_on;
    REQUIRE(swc_lyapunov_of(&kOn1, &v_on) == SWC_OK);
    CHECK(v_on.w1 == 1.0);
    CHECK(v_on.w2 == 0.15);
    CHECK(v_on.eps == Approx(0.7));

    double value;
    REQUIRE(swc_lyapunov_value(&v_on, eq[0] + 1.0, eq[1], &value) == SWC_OK);
    CHECK(value == Approx(1.0).epsilon(1e-12));

    double residual[4];
    REQUIRE(swc_lyapunov_residual(&kOn1, residual) == SWC_OK);
    for (double r : residual) CHECK(std::abs(r) <= 1e-12);

    swc_lyapunov v_off;
    REQUIRE(swc_lyapunov_of(&kOff1, &v_off) == SWC_OK);
    double k_bar;
    REQUIRE(swc_enclosing_level_shared(&v_off, &v_on, 0.2, &k_bar) == SWC_OK);
    CHECK(k_bar == Approx(2.933359422553238).epsilon(1e-13));

    double k_general;
    REQUIRE(swc_enclosing_level_general(&v_off, &v_on, 0.2, &k_general) == SWC_OK);
    CHECK(k_general == Approx(k_bar).epsilon(1e-9));

    double inner;
    REQUIRE(swc_touching_level_inner(&v_off, &v_on, 0.2, &inner) == SWC_OK);
    CHECK(inner < 0.2);

    double tau;
    REQUIRE(swc_dwell_time(0.7, 0.2, k_bar, &tau) == SWC_OK);
    CHECK(tau == Approx(3.8365517703754855).epsilon(1e-13));
    CHECK(swc_dwell_time(0.7, 1.0, 0.5, &tau) == SWC_ERR_INVALID_LEVELS);

    swc_lyapunov narrow = v_on;
    narrow.w1 = 2.0;
    CHECK(swc_enclosing_level_shared(&v_off, &narrow, 0.2, &k_bar) ==
          SWC_ERR_WEIGHT_MISMATCH);

    const double c_old[2] = {0.0, 0.0};
    const double c_new[2] = {1.0, 1.0};
    swc_mode_params aniso{-1.0, 2.0, -3.0, -4.0, 0.0, 0.0};
    double weak;
    REQUIRE(swc_dwell_time_weak(&aniso, c_old, c_new, 1.0, &weak) == SWC_OK);
    CHECK(weak == Approx(0.61911315973116637).epsilon(1e-13));
}

TEST_CASE("flow surface") {
    const double A[4] = {0.0, -1.0, 1.0, 0.0};
    double e[4];
    REQUIRE(swc_matrix_exp(A, 1.0, e) == SWC_OK);
    CHECK(e[0] == Approx(std::cos(1.0)).epsilon(1e-14));
    CHECK(e[1] == Approx(-std::sin(1.0)).epsilon(1e-14));

    const double x0[2] = {0.0, 0.0};
    double xt[2];
    REQUIRE(swc_affine_flow(&kOn1, x0, 1000.0, xt) == SWC_OK);
    CHECK(xt[0] == Approx(0.84848484848484848).epsilon(1e-10));

    int found;
    double t_cross;
    REQUIRE(swc_detect_crossing(&kOn1, x0, 0.0, 20.0, 0.5, &found, &t_cross) == SWC_OK);
    REQUIRE(found == 1);
    double at[2];
    REQUIRE(swc_affine_flow(&kOn1, x0, t_cross, at) == SWC_OK);
    CHECK(at[0] == Approx(0.5).epsilon(1e-8));

    REQUIRE(swc_detect_crossing(&kOn1, x0, 0.0, 20.0, 2.0, &found, &t_cross) == SWC_OK);
    CHECK(found == 0);
}

TEST_CASE("simulate, verify, and schedule through handles") {
    swc_modes* table = swc_modes_new();
    REQUIRE(table != nullptr);
    REQUIRE(swc_modes_add(table, "OFF", &kOff1) == SWC_OK);
    REQUIRE(swc_modes_add(table, "ON", &kOn1) == SWC_OK);
    CHECK(swc_modes_add(table, "ON", &kOn1) == SWC_ERR_INVALID_ARGUMENT);
    CHECK(swc_modes_count(table) == 2);

    swc_signal* signal = swc_signal_new();
    REQUIRE(signal != nullptr);
    for (int j = 0; j < 5; ++j) {
        REQUIRE(swc_signal_add(signal, j * 7.68, "ON") == SWC_OK);
        REQUIRE(swc_signal_add(signal, j * 7.68 + 3.84, "OFF") == SWC_OK);
    }
    REQUIRE(swc_signal_set_horizon(signal, 5 * 7.68) == SWC_OK);

    double dt;
    REQUIRE(swc_default_dt(signal, &dt) == SWC_OK);
    CHECK(dt == Approx(0.00384).epsilon(1e-12));

    const double x0[2] = {0.0, 0.0};
    swc_trajectory* traj = nullptr;
    REQUIRE(swc_simulate(table, signal, x0, dt, 0, 0, 0, 0, &traj) == SWC_OK);
    REQUIRE(traj != nullptr);
    CHECK(swc_trajectory_samples(traj) > 5000);
    CHECK(swc_trajectory_events(traj) == 9);

    double t, x1, x2, v;
    REQUIRE(swc_trajectory_sample(traj, 0, &t, &x1, &x2, &v) == SWC_OK);
    CHECK(t == 0.0);
    CHECK(std::string(swc_trajectory_sample_mode(traj, 0)) == "ON");
    int kind;
    REQUIRE(swc_trajectory_event(traj, 0, &t, &kind) == SWC_OK);
    CHECK(t == Approx(3.84));
    CHECK(kind == 0);
    CHECK(std::string(swc_trajectory_event_from(traj, 0)) == "ON");
    CHECK(std::string(swc_trajectory_event_to(traj, 0)) == "OFF");
    CHECK(swc_trajectory_sample(traj, 1u << 30, &t, &x1, &x2, &v) ==
          SWC_ERR_INVALID_ARGUMENT);

    swc_trap_report* report = nullptr;
    REQUIRE(swc_verify_trapping(traj, table, 0.2, &report) == SWC_OK);
    REQUIRE(report != nullptr);
    CHECK(swc_trap_overall(report) == 1);
    CHECK(swc_trap_switch_checks(report) == 10);
    CHECK(swc_trap_tube_checks(report) == 10);
    double value, bound;
    int pass;
    REQUIRE(swc_trap_switch_check(report, 0, &t, &value, &bound, &pass) == SWC_OK);
    CHECK(value == 0.0);
    CHECK(bound == 0.2);
    CHECK(pass == 1);
    double t_begin, t_end, max_v, k_i;
    REQUIRE(swc_trap_tube_check(report, 0, &t_begin, &t_end, &max_v, &k_i, &pass) == SWC_OK);
    CHECK(pass == 1);
    CHECK(max_v <= k_i + 1e-6);
    CHECK(std::string(swc_trap_tube_mode(report, 0)) == "ON");

    const char* order[3] = {"OFF", "ON", "OFF"};
    swc_schedule* schedule = nullptr;
    REQUIRE(swc_min_dwell_schedule(table, order, 3, 0.2, &schedule) == SWC_OK);
    REQUIRE(schedule != nullptr);
    CHECK(swc_schedule_count(schedule) == 2);
    double tau;
    REQUIRE(swc_schedule_entry(schedule, 0, &k_i, &tau) == SWC_OK);
    CHECK(tau == Approx(3.8365517703754855).epsilon(1e-13));
    CHECK(std::string(swc_schedule_from(schedule, 1)) == "ON");

    swc_schedule_free(schedule);
    swc_trap_report_free(report);
    swc_trajectory_free(traj);
    swc_signal_free(signal);
    swc_modes_free(table);
}

TEST_CASE("reset through the C simulate entry point") {
    swc_modes* table = swc_modes_new();
    REQUIRE(swc_modes_add(table, "ON", &kOn1) == SWC_OK);
    swc_signal* signal = swc_signal_new();
    REQUIRE(swc_signal_add(signal, 0.0, "ON") == SWC_OK);
    REQUIRE(swc_signal_set_horizon(signal, 30.0) == SWC_OK);

    const double x0[2] = {0.0, 0.0};
    swc_trajectory* traj = nullptr;
    REQUIRE(swc_simulate(table, signal, x0, 0.01, 1, 0.5, -0.2, 0.1, &traj) == SWC_OK);
    bool saw_reset = false;
    for (size_t i = 0; i < swc_trajectory_events(traj); ++i) {
        double t;
        int kind;
        REQUIRE(swc_trajectory_event(traj, i, &t, &kind) == SWC_OK);
        if (kind == 1) saw_reset = true;
    }
    CHECK(saw_reset);
    swc_trajectory_free(traj);
    swc_signal_free(signal);
    swc_modes_free(table);
}

TEST_CASE("neuron certification surface") {
    const swc_neuron_params p = set1();
    swc_certificate cert;
    REQUIRE(swc_certify(&p, 0.2, &cert) == SWC_OK);
    CHECK(cert.k == 0.2);
    CHECK(cert.v_I == Approx(0.84848484848484848).epsilon(1e-14));
    CHECK(cert.h_I == Approx(-2.4242424242424242).epsilon(1e-14));
    CHECK(cert.k_bar == Approx(2.933359422553238).epsilon(1e-13));
    CHECK(cert.tau_d == Approx(3.8365517703754855).epsilon(1e-13));
    CHECK(cert.v_bound == Approx(2.5611901420345701).epsilon(1e-13));
    CHECK(cert.dwell_ok == 1);
    CHECK(cert.nonspiking_known == 0);

    swc_neuron_params with_th = p;
    with_th.has_v_th = 1;
    with_th.v_th = 2.6;
    REQUIRE(swc_certify(&with_th, 0.2, &cert) == SWC_OK);
    CHECK(cert.nonspiking_known == 1);
    CHECK(cert.nonspiking_ok == 1);

    CHECK(swc_certify(&p, 0.0, &cert) == SWC_ERR_INVALID_LEVELS);

    swc_modes* table = nullptr;
    REQUIRE(swc_neuron_modes(&p, &table) == SWC_OK);
    CHECK(swc_modes_count(table) == 2);
    swc_modes_free(table);

    swc_signal* wave = nullptr;
    REQUIRE(swc_square_wave(&p, 4, &wave) == SWC_OK);
    double dt;
    REQUIRE(swc_default_dt(wave, &dt) == SWC_OK);
    CHECK(dt == Approx(0.00384).epsilon(1e-12));
    swc_signal_free(wave);
    CHECK(swc_square_wave(&p, 0, &wave) == SWC_ERR_INVALID_ARGUMENT);

    const double origin[2] = {0.0, 0.0};
    const double far[2] = {5.0, 5.0};
    int inside;
    REQUIRE(swc_starts_inside(&p, 0.2, origin, &inside) == SWC_OK);
    CHECK(inside == 1);
    REQUIRE(swc_starts_inside(&p, 0.2, far, &inside) == SWC_OK);
    CHECK(inside == 0);
}

TEST_CASE("nonlinear surface with embedded modes") {
    swc_mode_params aniso{-1.0, 2.0, -3.0, -4.0, 1.0, -2.0};
    swc_nl_system* s_old = nullptr;
    swc_nl_system* s_new = nullptr;
    REQUIRE(swc_nl_from_mode(&kOff1, &s_old) == SWC_OK);
    REQUIRE(swc_nl_from_mode(&aniso, &s_new) == SWC_OK);

    double k_i;
    REQUIRE(swc_nl_enclosing_level(s_old, s_new, 0.2, &k_i) == SWC_OK);
    CHECK(k_i > 0.2);
    double tau;
    REQUIRE(swc_nl_dwell_time(s_new, 0.2, k_i, &tau) == SWC_OK);
    CHECK(tau > 0.0);
    CHECK(swc_nl_dwell_time(s_new, 0.2, 0.1, &tau) == SWC_ERR_INVALID_LEVELS);

    const double x0[2] = {1.0, 1.0};
    swc_nl_trajectory* traj = nullptr;
    REQUIRE(swc_nl_integrate(s_old, x0, 2.0, 1e-3, &traj) == SWC_OK);
    REQUIRE(swc_nl_trajectory_samples(traj) > 1000);
    double t, x[2], v;
    REQUIRE(swc_nl_trajectory_sample(traj, 0, &t, x, &v) == SWC_OK);
    CHECK(t == 0.0);
    CHECK(x[0] == 1.0);
    swc_nl_trajectory_free(traj);

    const double lo[2] = {-2.0, -2.0};
    const double hi[2] = {2.0, 2.0};
    int ok;
    double worst_sandwich, worst_decay;
    REQUIRE(swc_nl_validate(s_old, lo, hi, 500, 7, &ok, &worst_sandwich, &worst_decay) ==
            SWC_OK);
    CHECK(ok == 1);
    CHECK(worst_decay <= 1e-9);

    swc_nl_free(s_new);
    swc_nl_free(s_old);
}

TEST_CASE("nonlinear surface with C callbacks") {
    const double eq[1] = {0.0};
    swc_nl_system* s = swc_nl_new(1, field_1d, lyap_1d, grad_1d, alpha_1d, alpha_1d,
                                  nullptr, eq, 2.0, nullptr);
    REQUIRE(s != nullptr);

    // Identical comparison functions make the enclosing level exact:
    // k_i = (||delta|| + sqrt(k))^2 with delta = 0 here.
    double k_i;
    REQUIRE(swc_nl_enclosing_level(s, s, 0.81, &k_i) == SWC_OK);
    CHECK(k_i == Approx(0.81).epsilon(1e-10));

    const double x0[1] = {1.0};
    swc_nl_trajectory* traj = nullptr;
    REQUIRE(swc_nl_integrate(s, x0, 1.0, 1e-4, &traj) == SWC_OK);
    const size_t n = swc_nl_trajectory_samples(traj);
    double t, x[1], v;
    REQUIRE(swc_nl_trajectory_sample(traj, n - 1, &t, x, &v) == SWC_OK);
    CHECK(x[0] == Approx(std::exp(-1.0)).epsilon(1e-9));
    swc_nl_trajectory_free(traj);

    const double lo[1] = {-3.0};
    const double hi[1] = {3.0};
    int ok;
    double ws, wd;
    REQUIRE(swc_nl_validate(s, lo, hi, 500, 11, &ok, &ws, &wd) == SWC_OK);
    CHECK(ok == 1);
    swc_nl_free(s);

    // Required arguments are enforced.
    CHECK(swc_nl_new(0, field_1d, lyap_1d, nullptr, alpha_1d, alpha_1d, nullptr, eq, 2.0,
                     nullptr) == nullptr);
}

TEST_CASE("oracle surface") {
    swc_lyapunov v_old, v_on;
    REQUIRE(swc_lyapunov_of(&kOff1, &v_old) == SWC_OK);
    REQUIRE(swc_lyapunov_of(&kOn1, &v_on) == SWC_OK);

    double exact, sampled;
    REQUIRE(swc_enclosing_level_shared(&v_old, &v_on, 0.2, &exact) == SWC_OK);
    REQUIRE(swc_boundary_max(&v_old, 0.2, &v_on, 4096, &sampled) == SWC_OK);
    CHECK(std::abs(sampled - exact) / exact <= 1e-5);

    double worst, best;
    REQUIRE(swc_fd_decay_check(&kOn1, 500, 3, &worst, &best) == SWC_OK);
    CHECK(worst <= 1e-9);
    CHECK(std::abs(worst) <= 1e-6);

    int ok;
    double violation;
    REQUIRE(swc_inclusion_check(&v_old, 0.2, &v_on, exact, 256, &ok, &violation) == SWC_OK);
    CHECK(ok == 1);

    swc_rng* rng = swc_rng_new(13);
    REQUIRE(rng != nullptr);
    swc_mode_params m, shared;
    REQUIRE(swc_random_mode(rng, &m) == SWC_OK);
    CHECK(swc_validate_mode(&m) == SWC_OK);
    REQUIRE(swc_random_mode_shared(rng, &m, &shared) == SWC_OK);
    CHECK(shared.b == m.b);
    CHECK(shared.c == m.c);
    swc_rng_free(rng);
}

TEST_CASE("command layer through the C API") {
    const std::string cfg = write_temp("cmd.json", R"({
        "neuron": {"g_p": 0.75, "g_h": 0.15, "m": 1.0, "o_h": 0.35, "I": 1.0},
        "signal": {"periodic": {"T_I": 3.84, "T_0": 3.84, "periods": 3}},
        "k": 0.2,
        "v_th": 2.6
    })");

    int exit_code;
    char* output = nullptr;
    char* diagnostic = nullptr;
    REQUIRE(swc_cmd_certify(cfg.c_str(), &exit_code, &output, &diagnostic) == SWC_OK);
    CHECK(exit_code == 0);
    REQUIRE(output != nullptr);
    CHECK(std::string(output).find("\"tau_d\"") != std::string::npos);
    swc_string_free(output);
    swc_string_free(diagnostic);

    REQUIRE(swc_cmd_certify("/nonexistent.json", &exit_code, &output, &diagnostic) ==
            SWC_OK);
    CHECK(exit_code == 2);
    REQUIRE(diagnostic != nullptr);
    CHECK(std::strlen(diagnostic) > 0);
    swc_string_free(output);
    swc_string_free(diagnostic);

    const std::string csv = "/tmp/switchcert_capi_run.csv";
    REQUIRE(swc_cmd_simulate(cfg.c_str(), csv.c_str(), nullptr, &exit_code, &output,
                             &diagnostic) == SWC_OK);
    CHECK(exit_code == 0);
    swc_string_free(output);
    swc_string_free(diagnostic);

    REQUIRE(swc_cmd_verify(cfg.c_str(), csv.c_str(), &exit_code, &output, &diagnostic) ==
            SWC_OK);
    CHECK(exit_code == 0);
    CHECK(std::string(output).find("\"overall\":true") != std::string::npos);
    swc_string_free(output);
    swc_string_free(diagnostic);

    REQUIRE(swc_cmd_dwell(cfg.c_str(), &exit_code, &output, &diagnostic) == SWC_OK);
    CHECK(exit_code == 0);
    swc_string_free(output);
    swc_string_free(diagnostic);

    REQUIRE(swc_cmd_oracle(cfg.c_str(), 256, 1, 5, &exit_code, &output, &diagnostic) ==
            SWC_OK);
    CHECK(exit_code == 0);
    CHECK(std::string(output).find("\"ok\":true") != std::string::npos);
    swc_string_free(output);
    swc_string_free(diagnostic);

    CHECK(swc_cmd_certify(nullptr, &exit_code, &output, &diagnostic) ==
          SWC_ERR_INVALID_ARGUMENT);
}
