#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace switchcert::planar {

/// One affine subsystem  x' = A x + B  with A = [[a, b], [c, d]].
///
/// Admissible modes satisfy a*b*c*d < 0 (strictly, so every entry is nonzero)
/// and A Hurwitz (ad - bc > 0, a + d < 0). Both are enforced by validate().
struct Mode {
    std::string id;
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    Vec2 B;

    Mat2 matrix() const { return {a, b, c, d}; }
};

/// Weighted-distance Lyapunov function
///   V(x) = w1 (x1 - c1)^2 + w2 (x2 - c2)^2
/// together with its exponential decay rate:  dV/dt <= -eps V along the flow.
struct Lyapunov {
    double w1 = 1.0;
    double w2 = 1.0;
    Vec2 center;
    double eps = 0.0;

    double value(Vec2 x) const {
        const double d1 = x.x1 - center.x1;
        const double d2 = x.x2 - center.x2;
        return w1 * d1 * d1 + w2 * d2 * d2;
    }

    Vec2 gradient(Vec2 x) const {
        return {2.0 * w1 * (x.x1 - center.x1), 2.0 * w2 * (x.x2 - center.x2)};
    }

    /// Point of the level-k boundary ellipse at ellipse angle phi.
    Vec2 boundary_point(double k, double phi) const;
};

/// Closed set { x : V(x) <= k }.
struct SublevelSet {
    Lyapunov lyapunov;
    double k = 0.0;

    bool contains(Vec2 x, double tol = 0.0) const { return lyapunov.value(x) <= k + tol; }
};

/// Relative tolerance below which two weight pairs count as identical and the
/// closed-form shared-weight level applies.
inline constexpr double kWeightMatchRelTol = 1e-12;

/// Checks the sign condition a*b*c*d < 0 (rejecting zero entries explicitly)
/// and the Hurwitz inequalities ad - bc > 0, a + d < 0. Returns the mode
/// unchanged; throws Error{sign_condition} or Error{not_hurwitz} naming the
/// failed inequality.
Mode validate_mode(const Mode& m);

/// True iff validate_mode would accept m.
bool is_valid_mode(const Mode& m);

/// Equilibrium x_u solving A x + B = 0 (A invertible for validated modes).
Vec2 equilibrium(const Mode& m);

/// Lyapunov function of a validated mode: weights (|c|, |b|), center at the
/// equilibrium, decay rate 2*min{|a|, |d|}. Equivalently
/// V(x) = sign(ac) * (-c (x1-xu1)^2 + b (x2-xu2)^2), which makes both weights
/// positive under the sign condition.
Lyapunov lyapunov(const Mode& m);

/// Diagonal matrix P = sign(ac)*diag(-c, b) = diag(w1, w2) solving the
/// Lyapunov equation A^T P + P A = 2 sign(ac) diag(-ac, bd).
Mat2 lyapunov_matrix(const Mode& m);

/// Residual of that equation; zero (to rounding) for every validated mode.
Mat2 lyapunov_residual(const Mode& m);

/// Smallest level k_i with { V_old <= k } contained in { V_new <= k_i } when
/// both functions share the same weights:
///   k_i = (sqrt(k) + s)^2,  s = sqrt(w1 D1^2 + w2 D2^2),  D = center shift.
/// The two boundary ellipses are tangent at that level.
/// Throws Error{weight_mismatch} when the weights differ beyond
/// kWeightMatchRelTol, and Error{invalid_levels} for k < 0.
double enclosing_level_shared(const Lyapunov& v_old, const Lyapunov& v_new, double k);

/// Smaller root (sqrt(k) - s)^2 of the tangency condition: the level at which
/// the new boundary first touches the old one from inside. Used to bound how
/// far a trajectory can be from an unstable mode's equilibrium. Shared weights
/// only.
double touching_level_inner(const Lyapunov& v_old, const Lyapunov& v_new, double k);

/// Enclosing level for arbitrary positive weights on both sides: maximizes
/// V_new over the boundary ellipse of { V_old <= k } by a dense angular scan
/// (1024 points) plus golden-section refinement of the best bracket.
/// Agrees with enclosing_level_shared to ~1e-9 relative when weights match.
double enclosing_level_general(const Lyapunov& v_old, const Lyapunov& v_new, double k);

/// Minimal stay duration in the new mode that returns the state into level k:
///   tau = ln(k_i / k) / eps_new.
/// Throws Error{invalid_levels} for k <= 0, k_i < k, or eps_new <= 0.
double dwell_time(double eps_new, double k, double k_i);

/// Coarser dwell bound that needs only the center distance:
///   tau = ln(1 + max{sqrt|c|, sqrt|b|} * ||D|| / sqrt(k)) / (2 min{|a|, |d|}).
double dwell_time_weak(const Mode& m_new, Vec2 center_old, Vec2 center_new, double k);

struct ScheduleEntry {
    std::string from;
    std::string to;
    double k_i = 0.0;
    double tau = 0.0;
};

/// Per-transition enclosing levels and minimal dwells for an itinerary of mode
/// ids. Picks the shared-weight formula when the pair's weights match and the
/// general maximization otherwise. One entry per consecutive pair.
std::vector<ScheduleEntry> min_dwell_schedule(std::span<const Mode> modes,
                                              std::span<const std::string> order, double k);

/// Table lookup by id; throws Error{unknown_mode}.
const Mode& find_mode(std::span<const Mode> modes, const std::string& id);

}  // namespace switchcert::planar
