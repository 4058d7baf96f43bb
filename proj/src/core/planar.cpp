#include "core/planar.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace switchcert::planar {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

Vec2 Lyapunov::boundary_point(double k, double phi) const {
    return {center.x1 + std::sqrt(k / w1) * std::cos(phi),
            center.x2 + std::sqrt(k / w2) * std::sin(phi)};
}

Mode validate_mode(const Mode& m) {
    const char* names[4] = {"a", "b", "c", "d"};
    const double entries[4] = {m.a, m.b, m.c, m.d};
    for (int i = 0; i < 4; ++i) {
        if (entries[i] == 0.0) {
            throw Error(errc::sign_condition,
                        "mode '" + m.id + "': sign condition a*b*c*d < 0 fails: entry " +
                            names[i] + " is zero");
        }
        if (!std::isfinite(entries[i])) {
            throw Error(errc::invalid_argument,
                        "mode '" + m.id + "': entry " + names[i] + " is not finite");
        }
    }
    const double prod = m.a * m.b * m.c * m.d;
    if (prod >= 0.0) {
        throw Error(errc::sign_condition, "mode '" + m.id + "': sign condition fails: a*b*c*d = " +
                                              fmt(prod) + " >= 0");
    }
    const double det = m.a * m.d - m.b * m.c;
    if (det <= 0.0) {
        throw Error(errc::not_hurwitz, "mode '" + m.id + "': not Hurwitz: ad - bc = " + fmt(det) +
                                           " <= 0");
    }
    const double tr = m.a + m.d;
    if (tr >= 0.0) {
        throw Error(errc::not_hurwitz,
                    "mode '" + m.id + "': not Hurwitz: a + d = " + fmt(tr) + " >= 0");
    }
    return m;
}

bool is_valid_mode(const Mode& m) {
    try {
        validate_mode(m);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Vec2 equilibrium(const Mode& m) {
    // x_u = -A^{-1} B for the validated (hence invertible) matrix.
    const double det = m.a * m.d - m.b * m.c;
    return {-(m.d * m.B.x1 - m.b * m.B.x2) / det, -(-m.c * m.B.x1 + m.a * m.B.x2) / det};
}

Lyapunov lyapunov(const Mode& m) {
    Lyapunov v;
    v.w1 = std::abs(m.c);
    v.w2 = std::abs(m.b);
    v.center = equilibrium(m);
    v.eps = 2.0 * std::min(std::abs(m.a), std::abs(m.d));
    return v;
}

Mat2 lyapunov_matrix(const Mode& m) {
    const double s = sign_of(m.a * m.c);
    return {s * -m.c, 0.0, 0.0, s * m.b};
}

Mat2 lyapunov_residual(const Mode& m) {
    const Mat2 A = m.matrix();
    const Mat2 P = lyapunov_matrix(m);
    const double s = sign_of(m.a * m.c);
    // A^T P + P A - 2 s diag(-ac, bd)
    const Mat2 At{A.a, A.c, A.b, A.d};
    Mat2 r{0, 0, 0, 0};
    auto mul = [](const Mat2& p, const Mat2& q) {
        return Mat2{p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c,
                    p.c * q.b + p.d * q.d};
    };
    r = mul(At, P) + mul(P, A);
    r.a -= 2.0 * s * -(m.a * m.c);
    r.d -= 2.0 * s * (m.b * m.d);
    return r;
}

namespace {

void require_level(double k) {
    if (!(k >= 0.0)) throw Error(errc::invalid_levels, "level k = " + fmt(k) + " must be >= 0");
}

void require_shared_weights(const Lyapunov& v_old, const Lyapunov& v_new) {
    if (!rel_close(v_old.w1, v_new.w1, kWeightMatchRelTol) ||
        !rel_close(v_old.w2, v_new.w2, kWeightMatchRelTol)) {
        throw Error(errc::weight_mismatch,
                    "weights (" + fmt(v_old.w1) + ", " + fmt(v_old.w2) + ") vs (" + fmt(v_new.w1) +
                        ", " + fmt(v_new.w2) +
                        ") differ; use enclosing_level_general for mode-dependent weights");
    }
}

double center_shift_norm(const Lyapunov& v_old, const Lyapunov& v_new) {
    const Vec2 delta = v_new.center - v_old.center;
    return std::sqrt(v_old.w1 * delta.x1 * delta.x1 + v_old.w2 * delta.x2 * delta.x2);
}

}  // namespace

double enclosing_level_shared(const Lyapunov& v_old, const Lyapunov& v_new, double k) {
    require_level(k);
    require_shared_weights(v_old, v_new);
    const double s = center_shift_norm(v_old, v_new);
    const double r = std::sqrt(k) + s;
    return r * r;
}

double touching_level_inner(const Lyapunov& v_old, const Lyapunov& v_new, double k) {
    require_level(k);
    require_shared_weights(v_old, v_new);
    const double s = center_shift_norm(v_old, v_new);
    const double r = std::sqrt(k) - s;
    return r * r;
}

double enclosing_level_general(const Lyapunov& v_old, const Lyapunov& v_new, double k) {
    require_level(k);
    if (k == 0.0) return v_new.value(v_old.center);

    // V_new restricted to the boundary ellipse is smooth with at most four
    // local extrema: a 1024-point scan brackets the global maximum, then
    // golden-section refinement tightens it.
    constexpr int n_scan = 1024;
    const double step = 2.0 * M_PI / n_scan;
    auto value_at = [&](double phi) { return v_new.value(v_old.boundary_point(k, phi)); };

    int best = 0;
    double best_value = value_at(0.0);
    for (int i = 1; i < n_scan; ++i) {
        const double v = value_at(i * step);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    auto [phi, value] = golden_max(value_at, (best - 1) * step, (best + 1) * step, 1e-12);
    (void)phi;
    return std::max(value, best_value);
}

double dwell_time(double eps_new, double k, double k_i) {
    if (!(eps_new > 0.0)) {
        throw Error(errc::invalid_levels, "decay rate eps = " + fmt(eps_new) + " must be > 0");
    }
    if (!(k > 0.0)) throw Error(errc::invalid_levels, "level k = " + fmt(k) + " must be > 0");
    if (!(k_i >= k)) {
        throw Error(errc::invalid_levels,
                    "enclosing level k_i = " + fmt(k_i) + " below k = " + fmt(k));
    }
    return std::log(k_i / k) / eps_new;
}

double dwell_time_weak(const Mode& m_new, Vec2 center_old, Vec2 center_new, double k) {
    if (!(k > 0.0)) throw Error(errc::invalid_levels, "level k = " + fmt(k) + " must be > 0");
    const double eps = 2.0 * std::min(std::abs(m_new.a), std::abs(m_new.d));
    const double w_max = std::max(std::sqrt(std::abs(m_new.c)), std::sqrt(std::abs(m_new.b)));
    const double dist = (center_new - center_old).norm();
    return std::log(1.0 + w_max * dist / std::sqrt(k)) / eps;
}

const Mode& find_mode(std::span<const Mode> modes, const std::string& id) {
    for (const Mode& m : modes) {
        if (m.id == id) return m;
    }
    throw Error(errc::unknown_mode, "unknown mode id '" + id + "'");
}

std::vector<ScheduleEntry> min_dwell_schedule(std::span<const Mode> modes,
                                              std::span<const std::string> order, double k) {
    std::vector<ScheduleEntry> schedule;
    if (order.size() < 2) return schedule;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const Mode& from = find_mode(modes, order[i]);
        const Mode& to = find_mode(modes, order[i + 1]);
        const Lyapunov v_old = lyapunov(from);
        const Lyapunov v_new = lyapunov(to);
        const bool shared = rel_close(v_old.w1, v_new.w1, kWeightMatchRelTol) &&
                            rel_close(v_old.w2, v_new.w2, kWeightMatchRelTol);
        const double k_i = shared ? enclosing_level_shared(v_old, v_new, k)
                                  : enclosing_level_general(v_old, v_new, k);
        // A smaller new-mode level set may already contain the old one; no
        // dwell is needed then.
        const double tau = k_i <= k ? 0.0 : dwell_time(v_new.eps, k, k_i);
        schedule.push_back({order[i], order[i + 1], k_i, tau});
    }
    return schedule;
}

}  // namespace switchcert::planar
