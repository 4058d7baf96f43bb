#pragma once

#include <optional>
#include <utility>

#include "core/planar.hpp"
#include "core/sim.hpp"
#include "core/types.hpp"

namespace switchcert::neuron {

/// Physiological parameters of the planar membrane model
///   v' = -g_p v + g_h h + I(t),   h' = -m v - o_h h,
/// driven by a square-wave current alternating between I (for T_I) and 0
/// (for T_0).
struct Params {
    double g_p = 0.0;  // passive decay rate of v
    double g_h = 0.0;  // depolarization rate contributed by h
    double m = 0.0;    // recovery gain
    double o_h = 0.0;  // decay rate of h
    double I = 0.0;    // input current amplitude while ON
    double T_I = 0.0;  // ON duration
    double T_0 = 0.0;  // OFF duration
    std::optional<double> v_th;  // firing threshold; enables the non-spiking verdict
    std::optional<double> v_R;   // post-spike membrane potential
    std::optional<double> h_R;   // post-spike recovery value

    /// Throws Error{invalid_argument} unless g_p, g_h, m, o_h, I, T_I, T_0 > 0.
    void validate() const;
};

inline constexpr const char* kModeOff = "OFF";
inline constexpr const char* kModeOn = "ON";

/// The OFF (I = 0) and ON (constant input I) subsystems, in that order. Both
/// share A = [[-g_p, g_h], [-m, -o_h]], admissible for any positive
/// parameters: abcd = -g_p g_h m o_h < 0, det = g_p o_h + m g_h > 0,
/// trace = -(g_p + o_h) < 0.
std::pair<planar::Mode, planar::Mode> modes(const Params& p);

/// Outcome of the closed-form certification at level k.
struct Certificate {
    double k = 0.0;
    double v_I = 0.0;      // ON equilibrium, membrane potential
    double h_I = 0.0;      // ON equilibrium, recovery variable
    double k_bar = 0.0;    // enclosing level, identical for both switch directions
    double tau_d = 0.0;    // minimal phase duration that re-traps the state
    double v_bound = 0.0;  // certified ceiling on v: v_I + sqrt(k_bar / m)
    bool dwell_ok = false;  // min{T_I, T_0} >= tau_d
    std::optional<bool> nonspiking_ok;  // v_th > v_bound, when v_th is given
};

/// Evaluates the certificate in closed form:
///   (v_I, h_I) = (I o_h, -I m) / (g_p o_h + m g_h)
///   k_bar = (sqrt(k) + sqrt(m v_I^2 + g_h h_I^2))^2
///   tau_d = ln(k_bar / k) / (2 min{g_p, o_h})
/// Throws Error{invalid_levels} for k <= 0.
Certificate certify(const Params& p, double k);

/// True when the OFF mode's level-k set contains x0. The trapping guarantee
/// only covers such starts; the customary start (0, 0) always qualifies.
bool starts_inside(const Params& p, double k, Vec2 x0);

/// Square wave of `periods` ON/OFF cycles: ON over (0, T_I], OFF over
/// (T_I, T_I + T_0], and so on; horizon = periods * (T_I + T_0).
sim::SwitchingSignal square_wave_signal(const Params& p, int periods);

/// Reset rule with v_th, v_R and the same h_R in both modes; std::nullopt
/// unless all three constants are present.
std::optional<sim::ResetRule> reset_rule(const Params& p);

}  // namespace switchcert::neuron
