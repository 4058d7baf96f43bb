#pragma once

#include <optional>
#include <string>

namespace switchcert::commands {

/// Outcome of one tool invocation. `output` is the machine-readable JSON
/// payload for standard output; `diagnostic` carries human-readable notes
/// and error text for standard error. Exit codes: 0 pass, 1 analysis
/// failure (a check did not hold or the state diverged), 2 config/input
/// error, 3 unwritable output.
struct Result {
    int exit_code = 0;
    std::string output;
    std::string diagnostic;
};

/// Certificate for the config's neuron block at its level k. Exit 0 iff
/// dwell_ok and (v_th absent or nonspiking_ok); the certificate JSON is
/// printed either way. A start outside the OFF level-k set is reported in
/// the diagnostic, since the trapping guarantee does not cover it.
Result certify(const std::string& config_path);

/// Simulates the configured system, writes the trajectory CSV to out_csv
/// (and optionally an SVG picture), and returns a JSON run summary.
Result simulate(const std::string& config_path, const std::string& out_csv,
                const std::optional<std::string>& out_svg);

/// Replays a trajectory CSV against the config's mode table and level k and
/// reports the trapping checks. Exit 0 iff all pass.
Result verify(const std::string& config_path, const std::string& traj_csv);

/// Per-transition dwell table: the enclosing level and the three bounds
/// (exact level-set, center-distance, ball-sandwich) side by side.
Result dwell(const std::string& config_path);

/// Cross-checks the config's modes against the brute-force oracles:
/// Lyapunov residual, decay-rate sampling, boundary-maximum levels, and
/// sublevel-set inclusion. Exit 0 iff every check lands within tolerance.
Result oracle_run(const std::string& config_path, int samples,
                  std::optional<unsigned long long> seed);

/// Certifies every (T, k) combination of the config's sweep grid with
/// T_I = T_0 = T; exit 0 unless the config is unusable.
Result sweep(const std::string& config_path);

}  // namespace switchcert::commands
