#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/neuron.hpp"
#include "core/planar.hpp"
#include "core/sim.hpp"

namespace switchcert::config {

/// Grid for the sweep command: every combination of equal phase duration
/// T (= T_I = T_0) and level k is certified.
struct SweepSpec {
    std::vector<double> T;
    std::vector<double> k;
};

/// A fully validated run description. Exactly one of `neuron_params` /
/// `raw_modes` is populated; `signal` is already resolved from whichever
/// form (periodic or explicit) the document used.
struct RunConfig {
    std::optional<neuron::Params> neuron_params;
    std::vector<planar::Mode> raw_modes;
    sim::SwitchingSignal signal;
    Vec2 x0{0.0, 0.0};
    double k = 0.2;
    std::optional<double> dt;
    std::optional<unsigned long long> seed;
    std::optional<sim::ResetRule> reset;
    std::optional<SweepSpec> sweep;
    std::vector<std::string> itinerary;
};

/// Parses and validates a JSON run description. Throws Error{config_error}
/// carrying the path of the offending field (e.g. "neuron.g_p: must be a
/// number"). Unknown keys are rejected to catch typos.
RunConfig parse(const std::string& text);

/// parse() on the file's contents; unreadable file -> Error{config_error}
/// (io_error is reserved for output-side failures, which exit with code 3).
RunConfig load(const std::string& path);

/// The mode table the config describes: the neuron block expanded to
/// {OFF, ON}, or the raw modes as given.
sim::ModeTable mode_table(const RunConfig& cfg);

}  // namespace switchcert::config
