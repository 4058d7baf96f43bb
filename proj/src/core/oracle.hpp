#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "core/planar.hpp"

namespace switchcert::oracle {

/// Brute-force enclosing level: max of V_new over n_samples equiangular
/// points phi_j = 2 pi j / n of the level-k boundary of V_old. Approaches
/// the exact level from below; nondecreasing in n over nested power-of-two
/// grids. Requires n_samples >= 16.
double boundary_max(const planar::Lyapunov& v_old, double k, const planar::Lyapunov& v_new,
                    int n_samples);

struct DecayCheck {
    double worst = 0.0;  // max of (grad V . f)/V + eps over samples; <= 0 up to rounding,
                         // and ~0 because the slow axis (where the rate is tight) is sampled
    double best = 0.0;   // min over samples; equals worst for isotropic |a| = |d| modes
};

/// Samples the shifted decay ratio (grad V . f)/V + eps at n_points random
/// states plus the two axis directions where the extremes are attained.
/// Requires n_points >= 100.
DecayCheck fd_decay_check(const planar::Mode& m, int n_points, std::uint64_t seed);

struct InclusionCheck {
    bool ok = true;
    double worst_violation = 0.0;  // largest excess of V_outer over the outer level; 0 if none
};

/// Samples the inner set's boundary (n_samples equiangular points) and
/// interior (n_samples spiral points) and tests membership in the outer set
/// with tolerance 1e-9 relative to max(1, outer level). Requires
/// n_samples >= 16.
InclusionCheck inclusion_check(const planar::SublevelSet& inner, const planar::SublevelSet& outer,
                               int n_samples);

/// Uniformly random admissible mode: a, b, c, d drawn from [-5, 5] with
/// (-0.05, 0.05) excluded, redrawn until the sign condition and Hurwitz
/// tests pass; B uniform in [-3, 3]^2.
planar::Mode random_mode(std::mt19937_64& rng, const std::string& id);

/// Same, but b and c are copied from `base` so the Lyapunov weights match;
/// only a, d (and B) are redrawn.
planar::Mode random_mode_shared(std::mt19937_64& rng, const std::string& id,
                                const planar::Mode& base);

}  // namespace switchcert::oracle
