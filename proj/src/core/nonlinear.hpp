#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "core/planar.hpp"

namespace switchcert::nonlinear {

using VecN = std::vector<double>;

/// Strictly increasing comparison bounds alpha(r) <= V <= beta(r),
/// alpha(0) = beta(0) = 0, valid on the box the caller certifies over.
/// alpha_inv may be supplied; when empty it is computed by bisection, with
/// the upper bracket doubled until alpha covers the requested level.
struct ComparisonPair {
    std::function<double(double)> alpha;
    std::function<double(double)> beta;
    std::function<double(double)> alpha_inv;

    /// alpha^{-1}(level) for level >= 0, exact to ~1e-12 relative.
    double invert_alpha(double level) const;
};

/// One subsystem x' = field(x) in n dimensions, with a Lyapunov function
/// decaying at rate eps and sandwiched by the comparison pair around the
/// equilibrium. grad may be empty; central differences are used then.
struct Subsystem {
    std::function<VecN(const VecN&)> field;
    VecN equilibrium;
    std::function<double(const VecN&)> lyapunov;
    std::function<VecN(const VecN&)> grad;
    ComparisonPair comparison;
    double eps = 0.0;

    std::size_t dim() const { return equilibrium.size(); }
    VecN gradient(const VecN& x) const;
};

/// Level k_i = beta_new(||x_new - x_old|| + alpha_inv_old(k)) whose sublevel
/// set contains { V_old <= k }: the old set fits inside a ball of radius
/// alpha_inv_old(k), the ball is carried to the new equilibrium, and beta
/// turns the enlarged radius back into a level. Coarser than the planar
/// ellipse-exact level except in the isotropic case.
double enclosing_level(const Subsystem& s_old, const Subsystem& s_new, double k);

/// Minimal stay (1/eps) ln(k_i / k) in the new subsystem. Throws
/// Error{invalid_levels} unless eps > 0 and 0 < k <= k_i.
double dwell_time(const Subsystem& s_new, double k, double k_i);

/// Embeds a validated planar mode: field x -> Ax + B, the mode's own
/// quadratic Lyapunov function and decay rate, and the ball bounds
/// alpha(r) = min(w1, w2) r^2, beta(r) = max(w1, w2) r^2 with an exact
/// alpha_inv.
Subsystem from_mode(const planar::Mode& m);

struct SampleN {
    double t = 0.0;
    VecN x;
    double v = 0.0;  // Lyapunov value at x
};

/// Classical fixed-step 4th-order integration from x0, sampled every dt;
/// the final step is shortened to land exactly on the horizon. Throws
/// Error{nonfinite_state} when the state leaves the finite range.
std::vector<SampleN> integrate(const Subsystem& s, const VecN& x0, double horizon, double dt);

struct ValidationReport {
    bool ok = true;
    double worst_sandwich = 0.0;  // smallest slack of alpha <= V <= beta; negative = violated
    double worst_decay = 0.0;     // largest (grad V . field)/V + eps; positive = violated
    VecN worst_sandwich_point;
    VecN worst_decay_point;
};

/// Samples n_points states uniformly in the box [lo, hi] (seeded, hence
/// reproducible) and checks the sandwich and decay contracts there. The
/// contracts cannot be proven for arbitrary user functions, so this is the
/// supported evidence; a violation beyond 1e-9 clears ok and records the
/// offending state.
ValidationReport validate_sampled(const Subsystem& s, const VecN& lo, const VecN& hi,
                                  int n_points, unsigned long long seed);

}  // namespace switchcert::nonlinear
