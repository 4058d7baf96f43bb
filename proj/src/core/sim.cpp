#include "core/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace switchcert::sim {

namespace {

// Below this the discriminant is treated as zero and the repeated-eigenvalue
// limit formula is used; the two generic branches lose accuracy there anyway.
constexpr double kRepeatedEigThreshold = 1e-12;
constexpr double kCrossingTimeTol = 1e-10;
constexpr double kVerifyTol = 1e-6;

std::optional<double> first_upcross(const planar::Mode& m, Vec2 x0, double t_lo, double t_hi,
                                    double v_th, int n) {
    if (!(t_hi > t_lo)) return std::nullopt;
    auto level = [&](double t) { return affine_flow(m, x0, t).x1; };
    const double step = (t_hi - t_lo) / n;
    double prev_t = t_lo;
    double prev_v = level(t_lo);
    for (int j = 1; j <= n; ++j) {
        const double cur_t = (j == n) ? t_hi : t_lo + j * step;
        const double cur_v = level(cur_t);
        if (prev_v < v_th && cur_v >= v_th) {
            double lo = prev_t;
            double hi = cur_t;
            while (hi - lo > kCrossingTimeTol) {
                const double mid = 0.5 * (lo + hi);
                if (level(mid) >= v_th)
                    hi = mid;
                else
                    lo = mid;
            }
            return hi;
        }
        prev_t = cur_t;
        prev_v = cur_v;
    }
    return std::nullopt;
}

}  // namespace

void SwitchingSignal::validate() const {
    if (switches.empty())
        throw Error(errc::invalid_argument, "switching signal needs at least one entry");
    if (switches.front().t != 0.0)
        throw Error(errc::invalid_argument, "switching signal must start at t = 0");
    for (std::size_t i = 1; i < switches.size(); ++i) {
        if (!(switches[i].t > switches[i - 1].t))
            throw Error(errc::invalid_argument, "switch times must be strictly increasing");
    }
    if (!(horizon >= switches.back().t))
        throw Error(errc::invalid_argument, "horizon must not precede the last switch time");
}

Mat2 matrix_exp(const Mat2& A, double t) {
    const double mu = 0.5 * A.trace();
    const double disc = (A.a - A.d) * (A.a - A.d) + 4.0 * A.b * A.c;
    // With the traceless part N = A - mu I,  e^{At} = e^{mu t} (f I + g N)
    // where (f, g) depend on the sign of the discriminant of A.
    const Mat2 N{A.a - mu, A.b, A.c, A.d - mu};
    double f = 1.0;
    double g = t;
    if (std::abs(disc) >= kRepeatedEigThreshold) {
        if (disc > 0.0) {
            const double s = 0.5 * std::sqrt(disc);
            f = std::cosh(s * t);
            g = std::sinh(s * t) / s;
        } else {
            const double w = 0.5 * std::sqrt(-disc);
            f = std::cos(w * t);
            g = std::sin(w * t) / w;
        }
    }
    const double scale = std::exp(mu * t);
    return {scale * (f + g * N.a), scale * (g * N.b), scale * (g * N.c), scale * (f + g * N.d)};
}

Vec2 affine_flow(const planar::Mode& m, Vec2 x0, double t) {
    const Vec2 xu = planar::equilibrium(m);
    return xu + matrix_exp(m.matrix(), t).apply(x0 - xu);
}

std::optional<double> detect_crossing(const planar::Mode& m, Vec2 x0, double t_lo, double t_hi,
                                      double v_th) {
    return first_upcross(m, x0, t_lo, t_hi, v_th, 1024);
}

double default_dt(const SwitchingSignal& signal) {
    signal.validate();
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < signal.switches.size(); ++i)
        min_gap = std::min(min_gap, signal.switches[i].t - signal.switches[i - 1].t);
    const double tail = signal.horizon - signal.switches.back().t;
    if (tail > 0.0) min_gap = std::min(min_gap, tail);
    if (!std::isfinite(min_gap) || min_gap <= 0.0)
        throw Error(errc::invalid_argument, "switching signal spans no time");
    return min_gap / 1000.0;
}

Trajectory simulate(const ModeTable& modes, const SwitchingSignal& signal, Vec2 x0, double dt,
                    const std::optional<ResetRule>& reset) {
    signal.validate();
    if (!(dt > 0.0)) throw Error(errc::invalid_argument, "sampling step must be positive");
    if (!x0.finite()) throw Error(errc::nonfinite_state, "initial state is not finite");
    if (reset && !(reset->v_R < reset->v_th))
        throw Error(errc::config_error, "reset target v_R must lie below the threshold v_th");

    Trajectory out;
    Vec2 x = x0;
    const std::size_t nseg = signal.switches.size();
    for (std::size_t i = 0; i < nseg; ++i) {
        const std::string& id = signal.switches[i].mode;
        const planar::Mode& m = planar::find_mode(modes, id);
        const planar::Lyapunov ly = planar::lyapunov(m);
        const double t_begin = signal.switches[i].t;
        const double t_end = (i + 1 < nseg) ? signal.switches[i + 1].t : signal.horizon;

        if (i > 0)
            out.events.push_back({t_begin, EventKind::Switch, signal.switches[i - 1].mode, id});
        out.samples.push_back({t_begin, x, id, ly.value(x)});
        if (!(t_end > t_begin)) continue;

        double h_reset = 0.0;
        if (reset) {
            const auto it = reset->h_R.find(id);
            if (it == reset->h_R.end())
                throw Error(errc::config_error,
                            "reset rule has no h_R entry for mode '" + id + "'");
            h_reset = it->second;
        }

        // Grid anchored at the segment start; a reset moves the anchor so the
        // flow is always evaluated exactly from the most recent event state.
        double anchor_t = t_begin;
        Vec2 anchor_x = x;
        double t_prev = t_begin;
        std::size_t j = 1;
        while (true) {
            double t_next = anchor_t + static_cast<double>(j) * dt;
            const bool at_end = t_next >= t_end - 1e-9 * dt;
            if (at_end) t_next = t_end;

            if (reset) {
                const auto cross = first_upcross(m, anchor_x, t_prev - anchor_t,
                                                 t_next - anchor_t, reset->v_th, 64);
                if (cross) {
                    const double t_star = anchor_t + *cross;
                    const Vec2 x_pre = affine_flow(m, anchor_x, *cross);
                    out.samples.push_back({t_star, x_pre, id, ly.value(x_pre)});
                    out.events.push_back({t_star, EventKind::Reset, id, ""});
                    const Vec2 x_post{reset->v_R, h_reset};
                    out.samples.push_back({t_star, x_post, id, ly.value(x_post)});
                    anchor_t = t_star;
                    anchor_x = x_post;
                    t_prev = t_star;
                    j = 1;
                    continue;
                }
            }

            const Vec2 xn = affine_flow(m, anchor_x, t_next - anchor_t);
            if (!xn.finite())
                throw Error(errc::nonfinite_state, "state left the finite range during simulation");
            out.samples.push_back({t_next, xn, id, ly.value(xn)});
            if (at_end) {
                x = xn;
                break;
            }
            t_prev = t_next;
            ++j;
        }
    }
    return out;
}

TrapReport verify_trapping(const Trajectory& traj, const ModeTable& modes, double k) {
    for (const Event& e : traj.events)
        if (e.kind == EventKind::Reset)
            throw Error(errc::invalid_argument, "trapping checks expect a reset-free trajectory");
    if (traj.samples.empty()) throw Error(errc::invalid_argument, "trajectory has no samples");
    if (modes.empty()) throw Error(errc::invalid_argument, "mode table is empty");
    if (!(k > 0.0)) throw Error(errc::invalid_levels, "level k must be positive");

    // Contiguous runs of a constant mode id; switch instants duplicate the
    // time stamp, so the outgoing sample closes one run and the incoming
    // sample opens the next.
    struct Run {
        std::size_t begin = 0;
        std::size_t end = 0;  // inclusive
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        if (runs.empty() || traj.samples[i].mode != traj.samples[runs.back().begin].mode)
            runs.push_back({i, i});
        else
            runs.back().end = i;
    }

    TrapReport report;
    report.overall = true;

    // Entry check: some mode's level-k set must contain the initial state.
    const Sample& first = traj.samples.front();
    double best_entry = std::numeric_limits<double>::infinity();
    const planar::Mode* witness = nullptr;
    for (const planar::Mode& m : modes) {
        const double v = planar::lyapunov(m).value(first.x);
        if (v < best_entry) {
            best_entry = v;
            witness = &m;
        }
    }
    report.switch_checks.push_back({first.t, best_entry, k, best_entry <= k + kVerifyTol});
    report.overall = report.overall && report.switch_checks.back().pass;

    for (std::size_t r = 0; r < runs.size(); ++r) {
        const Run& run = runs[r];
        const std::string& id = traj.samples[run.begin].mode;
        const planar::Mode& m = planar::find_mode(modes, id);
        const planar::Lyapunov ly = planar::lyapunov(m);

        // Level this run must stay inside: the enclosing level of the
        // previous mode's level-k set (the entry witness for the first run).
        const planar::Mode& prev =
            (r == 0) ? *witness : planar::find_mode(modes, traj.samples[runs[r - 1].begin].mode);
        const planar::Lyapunov ly_prev = planar::lyapunov(prev);
        const bool shared = rel_close(ly_prev.w1, ly.w1, planar::kWeightMatchRelTol) &&
                            rel_close(ly_prev.w2, ly.w2, planar::kWeightMatchRelTol);
        const double k_i = shared ? planar::enclosing_level_shared(ly_prev, ly, k)
                                  : planar::enclosing_level_general(ly_prev, ly, k);

        // Sampled maximum of V over the run, then a golden-section pass over
        // the bracket around the argmax, re-flowing exactly from the sample
        // before it.
        std::size_t arg = run.begin;
        double vmax = -std::numeric_limits<double>::infinity();
        for (std::size_t i = run.begin; i <= run.end; ++i) {
            if (traj.samples[i].v > vmax) {
                vmax = traj.samples[i].v;
                arg = i;
            }
        }
        if (run.end > run.begin) {
            const std::size_t a = (arg > run.begin) ? arg - 1 : run.begin;
            const std::size_t b = (arg < run.end) ? arg + 1 : run.end;
            const Sample& anchor = traj.samples[a];
            auto value_at = [&](double t) {
                return ly.value(affine_flow(m, anchor.x, t - anchor.t));
            };
            vmax = std::max(
                vmax, golden_max(value_at, traj.samples[a].t, traj.samples[b].t, 1e-10).second);
        }

        report.tube_checks.push_back({traj.samples[run.begin].t, traj.samples[run.end].t, id,
                                      vmax, k_i, vmax <= k_i + kVerifyTol});
        report.overall = report.overall && report.tube_checks.back().pass;

        // On leaving the run the outgoing mode must be back inside level k.
        if (r + 1 < runs.size()) {
            const Sample& leave = traj.samples[run.end];
            report.switch_checks.push_back({leave.t, leave.v, k, leave.v <= k + kVerifyTol});
            report.overall = report.overall && report.switch_checks.back().pass;
        }
    }
    return report;
}

}  // namespace switchcert::sim
