#include "core/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>
#include <vector>

#include "core/config.hpp"
#include "core/csvio.hpp"
#include "core/errors.hpp"
#include "core/jsonw.hpp"
#include "core/neuron.hpp"
#include "core/nonlinear.hpp"
#include "core/numeric.hpp"
#include "core/oracle.hpp"
#include "core/planar.hpp"
#include "core/sim.hpp"
#include "core/svg.hpp"

namespace switchcert::commands {

namespace {

int exit_for(const Error& e) {
    switch (e.code()) {
        case errc::io_error:
            return 3;
        case errc::nonfinite_state:
            return 1;
        default:
            return 2;
    }
}

template <typename Fn>
Result guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return {exit_for(e), "", e.what()};
    } catch (const std::exception& e) {
        return {2, "", std::string("internal error: ") + e.what()};
    }
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(errc::io_error, "cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw Error(errc::io_error, "write failed for '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error(errc::io_error, "cannot move output into place at '" + path + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::config_error, "cannot read file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

void write_certificate(jsonw::Writer& w, const neuron::Certificate& cert) {
    w.begin_object();
    w.key("k").value(cert.k);
    w.key("v_I").value(cert.v_I);
    w.key("h_I").value(cert.h_I);
    w.key("k_bar").value(cert.k_bar);
    w.key("tau_d").value(cert.tau_d);
    w.key("v_bound").value(cert.v_bound);
    w.key("dwell_ok").value(cert.dwell_ok);
    w.key("nonspiking_ok");
    if (cert.nonspiking_ok)
        w.value(*cert.nonspiking_ok);
    else
        w.null();
    w.end_object();
}

const neuron::Params& require_neuron(const config::RunConfig& cfg, const char* verb) {
    if (!cfg.neuron_params)
        throw Error(errc::config_error,
                    std::string(verb) + " needs a config with a 'neuron' block");
    return *cfg.neuron_params;
}

/// Consecutive (from, to) transitions of the signal, deduplicated in order
/// of first appearance.
std::vector<std::pair<std::string, std::string>> signal_transitions(
    const sim::SwitchingSignal& signal) {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 1; i < signal.switches.size(); ++i) {
        std::pair<std::string, std::string> t{signal.switches[i - 1].mode,
                                              signal.switches[i].mode};
        if (t.first == t.second) continue;
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

Result certify(const std::string& config_path) {
    return guarded([&]() -> Result {
        const config::RunConfig cfg = config::load(config_path);
        const neuron::Params& p = require_neuron(cfg, "certify");
        const neuron::Certificate cert = neuron::certify(p, cfg.k);

        jsonw::Writer w;
        write_certificate(w, cert);

        Result r;
        r.output = w.str() + "\n";
        const bool pass = cert.dwell_ok && cert.nonspiking_ok.value_or(true);
        r.exit_code = pass ? 0 : 1;
        if (!neuron::starts_inside(p, cfg.k, cfg.x0))
            r.diagnostic =
                "initial state lies outside the OFF level-k set; "
                "the trapping guarantee does not cover this start\n";
        return r;
    });
}

Result simulate(const std::string& config_path, const std::string& out_csv,
                const std::optional<std::string>& out_svg) {
    return guarded([&]() -> Result {
        const config::RunConfig cfg = config::load(config_path);
        const sim::ModeTable table = config::mode_table(cfg);
        const double dt = cfg.dt ? *cfg.dt : sim::default_dt(cfg.signal);
        std::optional<sim::ResetRule> reset = cfg.reset;
        const sim::Trajectory traj = sim::simulate(table, cfg.signal, cfg.x0, dt, reset);

        write_atomic(out_csv, csvio::write_trajectory(traj));

        if (out_svg) {
            std::vector<svg::EllipseSpec> ellipses;
            std::optional<double> v_th;
            if (cfg.neuron_params) {
                const neuron::Params& p = *cfg.neuron_params;
                const auto [off, on] = neuron::modes(p);
                const neuron::Certificate cert = neuron::certify(p, cfg.k);
                ellipses.push_back(
                    {planar::lyapunov(off), cfg.k, "N_OFF(k)", "#707070"});
                ellipses.push_back({planar::lyapunov(on), cfg.k, "N_ON(k)", "#2a7d2a"});
                ellipses.push_back(
                    {planar::lyapunov(on), cert.k_bar, "N_ON(k_bar)", "#b02a2a"});
                v_th = p.v_th;
            } else {
                static const char* palette[] = {"#707070", "#2a7d2a", "#b02a2a", "#7d2a7d",
                                                "#2a5d7d", "#7d5d2a"};
                for (std::size_t i = 0; i < table.size(); ++i)
                    ellipses.push_back({planar::lyapunov(table[i]), cfg.k,
                                        "N_" + table[i].id + "(k)",
                                        palette[i % (sizeof palette / sizeof *palette)]});
                if (cfg.reset) v_th = cfg.reset->v_th;
            }
            write_atomic(*out_svg, svg::render(traj, ellipses, v_th));
        }

        std::size_t switches = 0;
        std::size_t resets = 0;
        for (const sim::Event& e : traj.events)
            (e.kind == sim::EventKind::Switch ? switches : resets) += 1;
        double max_x1 = -std::numeric_limits<double>::infinity();
        double max_v = -std::numeric_limits<double>::infinity();
        for (const sim::Sample& s : traj.samples) {
            max_x1 = std::max(max_x1, s.x.x1);
            max_v = std::max(max_v, s.v);
        }

        jsonw::Writer w;
        w.begin_object();
        w.key("samples").value(static_cast<std::int64_t>(traj.samples.size()));
        w.key("switches").value(static_cast<std::int64_t>(switches));
        w.key("resets").value(static_cast<std::int64_t>(resets));
        w.key("horizon").value(cfg.signal.horizon);
        w.key("dt").value(dt);
        w.key("max_x1").value(max_x1);
        w.key("max_V").value(max_v);
        w.end_object();
        return {0, w.str() + "\n", ""};
    });
}

Result verify(const std::string& config_path, const std::string& traj_csv) {
    return guarded([&]() -> Result {
        const config::RunConfig cfg = config::load(config_path);
        const sim::ModeTable table = config::mode_table(cfg);
        const sim::Trajectory traj = csvio::read_trajectory(read_file(traj_csv));
        const sim::TrapReport report = sim::verify_trapping(traj, table, cfg.k);

        jsonw::Writer w;
        w.begin_object();
        w.key("overall").value(report.overall);
        w.key("switch_checks").begin_array();
        for (const sim::SwitchCheck& c : report.switch_checks) {
            w.begin_object();
            w.key("t").value(c.t);
            w.key("value").value(c.value);
            w.key("bound").value(c.bound);
            w.key("pass").value(c.pass);
            w.end_object();
        }
        w.end_array();
        w.key("tube_checks").begin_array();
        for (const sim::TubeCheck& c : report.tube_checks) {
            w.begin_object();
            w.key("t_begin").value(c.t_begin);
            w.key("t_end").value(c.t_end);
            w.key("mode").value(c.mode);
            w.key("max_v").value(c.max_v);
            w.key("k_i").value(c.k_i);
            w.key("pass").value(c.pass);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        return {report.overall ? 0 : 1, w.str() + "\n", ""};
    });
}

Result dwell(const std::string& config_path) {
    return guarded([&]() -> Result {
        const config::RunConfig cfg = config::load(config_path);
        const sim::ModeTable table = config::mode_table(cfg);

        std::vector<std::pair<std::string, std::string>> transitions;
        if (!cfg.itinerary.empty()) {
            for (std::size_t i = 1; i < cfg.itinerary.size(); ++i)
                transitions.emplace_back(cfg.itinerary[i - 1], cfg.itinerary[i]);
        } else {
            transitions = signal_transitions(cfg.signal);
        }
        if (transitions.empty())
            throw Error(errc::config_error,
                        "no transitions to tabulate: give an 'itinerary' or a signal "
                        "with at least one switch");

        jsonw::Writer w;
        w.begin_object();
        w.key("k").value(cfg.k);
        w.key("transitions").begin_array();
        for (const auto& [from, to] : transitions) {
            const planar::Mode& m_old = planar::find_mode(table, from);
            const planar::Mode& m_new = planar::find_mode(table, to);
            const planar::Lyapunov v_old = planar::lyapunov(m_old);
            const planar::Lyapunov v_new = planar::lyapunov(m_new);

            const bool shared = rel_close(v_old.w1, v_new.w1, planar::kWeightMatchRelTol) &&
                                rel_close(v_old.w2, v_new.w2, planar::kWeightMatchRelTol);
            const double k_i = shared ? planar::enclosing_level_shared(v_old, v_new, cfg.k)
                                      : planar::enclosing_level_general(v_old, v_new, cfg.k);
            const double tau2 =
                k_i <= cfg.k ? 0.0 : planar::dwell_time(v_new.eps, cfg.k, k_i);
            const double tau5 =
                planar::dwell_time_weak(m_new, v_old.center, v_new.center, cfg.k);

            const nonlinear::Subsystem e_old = nonlinear::from_mode(m_old);
            const nonlinear::Subsystem e_new = nonlinear::from_mode(m_new);
            const double k_i4 = nonlinear::enclosing_level(e_old, e_new, cfg.k);
            const double tau4 =
                k_i4 <= cfg.k ? 0.0 : nonlinear::dwell_time(e_new, cfg.k, k_i4);

            w.begin_object();
            w.key("from").value(from);
            w.key("to").value(to);
            w.key("k_i").value(k_i);
            w.key("tau_theorem2").value(tau2);
            w.key("tau_remark5").value(tau5);
            w.key("tau_theorem4").value(tau4);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        return {0, w.str() + "\n", ""};
    });
}

Result oracle_run(const std::string& config_path, int samples,
                  std::optional<unsigned long long> seed) {
    return guarded([&]() -> Result {
        const config::RunConfig cfg = config::load(config_path);
        const sim::ModeTable table = config::mode_table(cfg);
        if (samples < 16) throw Error(errc::config_error, "--samples must be at least 16");
        const unsigned long long used_seed = seed ? *seed : cfg.seed.value_or(12345);

        bool ok = true;
        jsonw::Writer w;
        w.begin_object();
        w.key("seed").value(static_cast<std::int64_t>(used_seed));
        w.key("samples").value(static_cast<std::int64_t>(samples));

        w.key("modes").begin_array();
        for (std::size_t i = 0; i < table.size(); ++i) {
            const planar::Mode& m = table[i];
            const double residual = planar::lyapunov_residual(m).max_abs();
            const oracle::DecayCheck decay = oracle::fd_decay_check(m, 1000, used_seed + i);
            const bool mode_ok = residual <= 1e-12 && decay.worst <= 1e-9;
            ok = ok && mode_ok;
            w.begin_object();
            w.key("id").value(m.id);
            w.key("residual").value(residual);
            w.key("decay_worst").value(decay.worst);
            w.key("decay_best").value(decay.best);
            w.key("ok").value(mode_ok);
            w.end_object();
        }
        w.end_array();

        w.key("pairs").begin_array();
        for (std::size_t i = 0; i < table.size(); ++i) {
            for (std::size_t j = 0; j < table.size(); ++j) {
                if (i == j) continue;
                const planar::Lyapunov v_old = planar::lyapunov(table[i]);
                const planar::Lyapunov v_new = planar::lyapunov(table[j]);
                const bool shared =
                    rel_close(v_old.w1, v_new.w1, planar::kWeightMatchRelTol) &&
                    rel_close(v_old.w2, v_new.w2, planar::kWeightMatchRelTol);
                const double k_i = shared
                                       ? planar::enclosing_level_shared(v_old, v_new, cfg.k)
                                       : planar::enclosing_level_general(v_old, v_new, cfg.k);
                const double brute = oracle::boundary_max(v_old, cfg.k, v_new, samples);
                const double rel_err = std::abs(k_i - brute) / std::max(k_i, 1e-300);
                const oracle::InclusionCheck inc = oracle::inclusion_check(
                    {v_old, cfg.k}, {v_new, k_i}, std::max(samples / 2, 16));
                const bool pair_ok = rel_err <= 1e-5 && inc.ok;
                ok = ok && pair_ok;
                w.begin_object();
                w.key("from").value(table[i].id);
                w.key("to").value(table[j].id);
                w.key("k_i").value(k_i);
                w.key("oracle_max").value(brute);
                w.key("rel_err").value(rel_err);
                w.key("inclusion_ok").value(inc.ok);
                w.key("ok").value(pair_ok);
                w.end_object();
            }
        }
        w.end_array();

        w.key("ok").value(ok);
        w.end_object();
        return {ok ? 0 : 1, w.str() + "\n", ""};
    });
}

Result sweep(const std::string& config_path) {
    return guarded([&]() -> Result {
        const config::RunConfig cfg = config::load(config_path);
        const neuron::Params& base = require_neuron(cfg, "sweep");
        if (!cfg.sweep)
            throw Error(errc::config_error, "sweep needs a config with a 'sweep' block");

        jsonw::Writer w;
        w.begin_object();
        w.key("rows").begin_array();
        for (double T : cfg.sweep->T) {
            for (double k : cfg.sweep->k) {
                neuron::Params p = base;
                p.T_I = T;
                p.T_0 = T;
                const neuron::Certificate cert = neuron::certify(p, k);
                w.begin_object();
                w.key("T").value(T);
                w.key("k").value(k);
                w.key("tau_d").value(cert.tau_d);
                w.key("k_bar").value(cert.k_bar);
                w.key("v_bound").value(cert.v_bound);
                w.key("dwell_ok").value(cert.dwell_ok);
                w.key("nonspiking_ok");
                if (cert.nonspiking_ok)
                    w.value(*cert.nonspiking_ok);
                else
                    w.null();
                w.end_object();
            }
        }
        w.end_array();
        w.end_object();
        return {0, w.str() + "\n", ""};
    });
}

}  // namespace switchcert::commands
