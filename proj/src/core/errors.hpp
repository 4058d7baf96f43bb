#pragma once

#include <stdexcept>
#include <string>

namespace switchcert {

enum class errc {
    sign_condition = 1,   // a*b*c*d >= 0 (incl. a zero entry)
    not_hurwitz,          // ad - bc <= 0 or a + d >= 0
    invalid_levels,       // k <= 0 or k_i < k (or nonpositive decay rate)
    weight_mismatch,      // shared-weight formula applied to differing weights
    unknown_mode,         // signal or schedule references a mode id not in the table
    nonfinite_state,      // integration left the representable range
    config_error,         // config / CSV parse or validation failure
    io_error,             // output path not writable
    invalid_argument,
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message) : std::runtime_error(std::move(message)), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace switchcert
