#include "core/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "core/errors.hpp"

namespace switchcert::nonlinear {

namespace {

double norm(const VecN& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

VecN diff(const VecN& a, const VecN& b) {
    VecN out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

void require_dim(const VecN& v, std::size_t n, const char* what) {
    if (v.size() != n)
        throw Error(errc::invalid_argument, std::string(what) + " has the wrong dimension");
}

void require_finite(const VecN& v) {
    for (double c : v)
        if (!std::isfinite(c))
            throw Error(errc::nonfinite_state, "state left the finite range during integration");
}

}  // namespace

double ComparisonPair::invert_alpha(double level) const {
    if (!(level >= 0.0))
        throw Error(errc::invalid_levels, "comparison levels must be nonnegative");
    if (alpha_inv) return alpha_inv(level);
    if (!alpha) throw Error(errc::invalid_argument, "comparison pair has no alpha");
    if (level == 0.0) return 0.0;
    double hi = 1.0;
    int doublings = 0;
    while (alpha(hi) < level) {
        hi *= 2.0;
        if (++doublings > 200)
            throw Error(errc::invalid_argument, "alpha never reaches the requested level");
    }
    double lo = 0.0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (alpha(mid) < level)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

VecN Subsystem::gradient(const VecN& x) const {
    if (grad) return grad(x);
    VecN g(x.size());
    VecN xp = x;
    VecN xm = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (lyapunov(xp) - lyapunov(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

double enclosing_level(const Subsystem& s_old, const Subsystem& s_new, double k) {
    if (!(k >= 0.0)) throw Error(errc::invalid_levels, "level k must be nonnegative");
    require_dim(s_new.equilibrium, s_old.dim(), "new equilibrium");
    const double shift = norm(diff(s_new.equilibrium, s_old.equilibrium));
    const double radius = shift + s_old.comparison.invert_alpha(k);
    return s_new.comparison.beta(radius);
}

double dwell_time(const Subsystem& s_new, double k, double k_i) {
    if (!(s_new.eps > 0.0)) throw Error(errc::invalid_levels, "decay rate must be positive");
    if (!(k > 0.0)) throw Error(errc::invalid_levels, "level k must be positive");
    if (k_i < k) throw Error(errc::invalid_levels, "enclosing level must be at least k");
    return std::log(k_i / k) / s_new.eps;
}

Subsystem from_mode(const planar::Mode& m) {
    planar::validate_mode(m);
    const planar::Lyapunov ly = planar::lyapunov(m);
    const double w_min = std::min(ly.w1, ly.w2);
    const double w_max = std::max(ly.w1, ly.w2);

    Subsystem s;
    s.field = [m](const VecN& x) -> VecN {
        return {m.a * x[0] + m.b * x[1] + m.B.x1, m.c * x[0] + m.d * x[1] + m.B.x2};
    };
    s.equilibrium = {ly.center.x1, ly.center.x2};
    s.lyapunov = [ly](const VecN& x) { return ly.value({x[0], x[1]}); };
    s.grad = [ly](const VecN& x) -> VecN {
        const Vec2 g = ly.gradient({x[0], x[1]});
        return {g.x1, g.x2};
    };
    s.comparison.alpha = [w_min](double r) { return w_min * r * r; };
    s.comparison.beta = [w_max](double r) { return w_max * r * r; };
    s.comparison.alpha_inv = [w_min](double level) { return std::sqrt(level / w_min); };
    s.eps = ly.eps;
    return s;
}

std::vector<SampleN> integrate(const Subsystem& s, const VecN& x0, double horizon, double dt) {
    if (!(dt > 0.0)) throw Error(errc::invalid_argument, "integration step must be positive");
    if (!(horizon >= 0.0)) throw Error(errc::invalid_argument, "horizon must be nonnegative");
    require_dim(x0, s.dim(), "initial state");
    require_finite(x0);

    const std::size_t n = x0.size();
    auto axpy = [n](const VecN& x, double h, const VecN& k) {
        VecN out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + h * k[i];
        return out;
    };

    std::vector<SampleN> out;
    VecN x = x0;
    double t = 0.0;
    out.push_back({t, x, s.lyapunov(x)});
    const double tiny = 1e-12 * std::max(1.0, horizon);
    while (t < horizon - tiny) {
        const double h = std::min(dt, horizon - t);
        const VecN k1 = s.field(x);
        const VecN k2 = s.field(axpy(x, 0.5 * h, k1));
        const VecN k3 = s.field(axpy(x, 0.5 * h, k2));
        const VecN k4 = s.field(axpy(x, h, k3));
        for (std::size_t i = 0; i < n; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        require_finite(x);
        t += h;
        out.push_back({t, x, s.lyapunov(x)});
    }
    return out;
}

ValidationReport validate_sampled(const Subsystem& s, const VecN& lo, const VecN& hi,
                                  int n_points, unsigned long long seed) {
    if (n_points < 1) throw Error(errc::invalid_argument, "need at least one sample point");
    require_dim(lo, s.dim(), "box lower corner");
    require_dim(hi, s.dim(), "box upper corner");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    ValidationReport report;
    report.worst_sandwich = std::numeric_limits<double>::infinity();
    report.worst_decay = -std::numeric_limits<double>::infinity();

    VecN x(s.dim());
    for (int p = 0; p < n_points; ++p) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);

        const double r = norm(diff(x, s.equilibrium));
        const double v = s.lyapunov(x);
        const double slack =
            std::min(v - s.comparison.alpha(r), s.comparison.beta(r) - v);
        if (slack < report.worst_sandwich) {
            report.worst_sandwich = slack;
            report.worst_sandwich_point = x;
        }

        if (v > 1e-12) {  // the decay ratio is 0/0 at the equilibrium
            const VecN g = s.gradient(x);
            const VecN f = s.field(x);
            double dv = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dv += g[i] * f[i];
            const double ratio = dv / v + s.eps;
            if (ratio > report.worst_decay) {
                report.worst_decay = ratio;
                report.worst_decay_point = x;
            }
        }
    }
    if (!std::isfinite(report.worst_decay)) report.worst_decay = 0.0;  // every sample degenerate
    report.ok = report.worst_sandwich >= -1e-9 && report.worst_decay <= 1e-9;
    return report;
}

}  // namespace switchcert::nonlinear
