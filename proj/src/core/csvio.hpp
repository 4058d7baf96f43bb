#pragma once

#include <string>

#include "core/sim.hpp"

namespace switchcert::csvio {

/// Serializes a trajectory as CSV: the header `t,x1,x2,mode,V`, one row per
/// sample with numbers at 17 significant digits, then the event log as
/// comment lines
///   #event,<t>,switch,<from>,<to>
///   #event,<t>,reset,<mode>,
/// Mode ids must be comma- and newline-free (config validation guarantees
/// this for ids it accepts).
std::string write_trajectory(const sim::Trajectory& traj);

/// Parses the same format: header required, `#event,` lines restored into
/// the event log, other `#` lines ignored. Throws Error{config_error} naming
/// the offending line for malformed input, including an empty data section.
sim::Trajectory read_trajectory(const std::string& text);

}  // namespace switchcert::csvio
