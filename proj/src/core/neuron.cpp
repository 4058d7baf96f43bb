#include "core/neuron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace switchcert::neuron {

void Params::validate() const {
    auto need_positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw Error(errc::invalid_argument, std::string(name) + " must be positive");
    };
    need_positive(g_p, "g_p");
    need_positive(g_h, "g_h");
    need_positive(m, "m");
    need_positive(o_h, "o_h");
    need_positive(I, "I");
    need_positive(T_I, "T_I");
    need_positive(T_0, "T_0");
}

std::pair<planar::Mode, planar::Mode> modes(const Params& p) {
    p.validate();
    const planar::Mode off{kModeOff, -p.g_p, p.g_h, -p.m, -p.o_h, {0.0, 0.0}};
    const planar::Mode on{kModeOn, -p.g_p, p.g_h, -p.m, -p.o_h, {p.I, 0.0}};
    planar::validate_mode(off);
    planar::validate_mode(on);
    return {off, on};
}

Certificate certify(const Params& p, double k) {
    p.validate();
    if (!(k > 0.0)) throw Error(errc::invalid_levels, "certification level k must be positive");
    Certificate c;
    c.k = k;
    const double den = p.g_p * p.o_h + p.m * p.g_h;
    c.v_I = p.I * p.o_h / den;
    c.h_I = -p.I * p.m / den;
    const double shift = std::sqrt(p.m * c.v_I * c.v_I + p.g_h * c.h_I * c.h_I);
    const double root = std::sqrt(k) + shift;
    c.k_bar = root * root;
    c.tau_d = std::log(c.k_bar / k) / (2.0 * std::min(p.g_p, p.o_h));
    c.v_bound = c.v_I + std::sqrt(c.k_bar / p.m);
    c.dwell_ok = std::min(p.T_I, p.T_0) >= c.tau_d;
    if (p.v_th) c.nonspiking_ok = *p.v_th > c.v_bound;
    return c;
}

bool starts_inside(const Params& p, double k, Vec2 x0) {
    const auto [off, on] = modes(p);
    (void)on;
    return planar::lyapunov(off).value(x0) <= k;
}

sim::SwitchingSignal square_wave_signal(const Params& p, int periods) {
    p.validate();
    if (periods < 1) throw Error(errc::invalid_argument, "periods must be at least 1");
    sim::SwitchingSignal s;
    const double period = p.T_I + p.T_0;
    for (int j = 0; j < periods; ++j) {
        s.switches.push_back({j * period, kModeOn});
        s.switches.push_back({j * period + p.T_I, kModeOff});
    }
    s.horizon = periods * period;
    return s;
}

std::optional<sim::ResetRule> reset_rule(const Params& p) {
    if (!p.v_th || !p.v_R || !p.h_R) return std::nullopt;
    sim::ResetRule r;
    r.v_th = *p.v_th;
    r.v_R = *p.v_R;
    r.h_R = {{kModeOff, *p.h_R}, {kModeOn, *p.h_R}};
    return r;
}

}  // namespace switchcert::neuron
