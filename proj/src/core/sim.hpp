#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/planar.hpp"
#include "core/types.hpp"

namespace switchcert::sim {

/// Piecewise-constant mode schedule. Entry (t, id) means mode `id` is active
/// from t until the next entry (or the horizon). The first entry must sit at
/// t = 0; times are strictly increasing and horizon >= the last switch time.
struct SwitchingSignal {
    struct Entry {
        double t = 0.0;
        std::string mode;
    };
    std::vector<Entry> switches;
    double horizon = 0.0;

    /// Throws Error{invalid_argument} if the invariants fail.
    void validate() const;
};

/// Threshold/reset law: when x1 reaches v_th from below, the state jumps to
/// (v_R, h_R(active mode)) and the flow continues in the same mode.
struct ResetRule {
    double v_th = 0.0;
    double v_R = 0.0;
    std::map<std::string, double> h_R;
};

enum class EventKind { Switch, Reset };

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::Switch;
    std::string from;  // Switch: outgoing mode (empty at the signal start). Reset: active mode.
    std::string to;    // Switch: incoming mode. Reset: unused.
};

struct Sample {
    double t = 0.0;
    Vec2 x;
    std::string mode;
    double v = 0.0;  // value of the active mode's Lyapunov function at x
};

/// Time-ordered samples plus the event log. Mode ids are constant between
/// consecutive switch events; switch instants carry two samples (outgoing and
/// incoming mode) at the same time stamp.
struct Trajectory {
    std::vector<Sample> samples;
    std::vector<Event> events;
};

using ModeTable = std::vector<planar::Mode>;

/// e^{At} in closed form by the sign of the discriminant (a-d)^2 + 4bc:
/// distinct real, complex conjugate, or repeated eigenvalues. The repeated
/// branch is taken when |discriminant| < 1e-12; the limit formula
/// (I + Nt)e^{mu t} is exact there. Accepts any 2x2 matrix.
Mat2 matrix_exp(const Mat2& A, double t);

/// Exact state of mode m at time t from x0:  x(t) = x_u + e^{At}(x0 - x_u).
Vec2 affine_flow(const planar::Mode& m, Vec2 x0, double t);

/// First time in (t_lo, t_hi] at which the first component of the flow from
/// x0 (clock zeroed at x0) crosses v_th upward. A 1024-point scan brackets
/// the earliest below-to-at-or-above transition and bisection narrows it to
/// 1e-10; std::nullopt when no upward crossing occurs.
std::optional<double> detect_crossing(const planar::Mode& m, Vec2 x0, double t_lo, double t_hi,
                                      double v_th);

/// Samples the switched system every dt (per-segment grid re-anchored at each
/// switch and reset), using the exact affine flow between events. With a reset
/// rule, upward v_th crossings are located by bisection and the jump
/// (v, h) <- (v_R, h_R(mode)) is applied in place. Deterministic.
Trajectory simulate(const ModeTable& modes, const SwitchingSignal& signal, Vec2 x0, double dt,
                    const std::optional<ResetRule>& reset = std::nullopt);

/// Default sampling step: (minimal inter-switch gap) / 1000.
double default_dt(const SwitchingSignal& signal);

struct SwitchCheck {
    double t = 0.0;
    double value = 0.0;  // Lyapunov value of the outgoing mode at the switch state
    double bound = 0.0;  // k
    bool pass = false;
};

struct TubeCheck {
    double t_begin = 0.0;
    double t_end = 0.0;
    std::string mode;
    double max_v = 0.0;  // refined maximum of the active mode's V over the interval
    double k_i = 0.0;
    bool pass = false;
};

struct TrapReport {
    std::vector<SwitchCheck> switch_checks;
    std::vector<TubeCheck> tube_checks;
    bool overall = false;
};

/// Checks the trapping claims on a simulated trajectory (resets rejected):
/// at every switch the outgoing mode's V is within k, and over each
/// inter-switch interval the active mode's V stays within the recomputed
/// enclosing level k_i, both with tolerance 1e-6. Interval maxima are sample
/// maxima refined by re-flowing around the argmax. The first check in
/// switch_checks is synthetic: it records the smallest Lyapunov value any
/// mode assigns to the initial state, which must be within k for some mode
/// to own the opening interval; that mode then supplies the first k_i.
TrapReport verify_trapping(const Trajectory& traj, const ModeTable& modes, double k);

}  // namespace switchcert::sim
