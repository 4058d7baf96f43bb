#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"

namespace switchcert::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double decay_ratio(const planar::Mode& m, const planar::Lyapunov& ly, Vec2 x) {
    const Vec2 f{m.a * x.x1 + m.b * x.x2 + m.B.x1, m.c * x.x1 + m.d * x.x2 + m.B.x2};
    return ly.gradient(x).dot(f) / ly.value(x) + ly.eps;
}

double draw_entry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> magnitude(0.05, 5.0);
    std::uniform_int_distribution<int> sign(0, 1);
    const double v = magnitude(rng);
    return sign(rng) ? v : -v;
}

}  // namespace

double boundary_max(const planar::Lyapunov& v_old, double k, const planar::Lyapunov& v_new,
                    int n_samples) {
    if (n_samples < 16) throw Error(errc::invalid_argument, "need at least 16 boundary samples");
    if (!(k >= 0.0)) throw Error(errc::invalid_levels, "level k must be nonnegative");
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_samples; ++j) {
        const double phi = kTwoPi * j / n_samples;
        best = std::max(best, v_new.value(v_old.boundary_point(k, phi)));
    }
    return best;
}

DecayCheck fd_decay_check(const planar::Mode& m, int n_points, std::uint64_t seed) {
    if (n_points < 100) throw Error(errc::invalid_argument, "need at least 100 sample points");
    planar::validate_mode(m);
    const planar::Lyapunov ly = planar::lyapunov(m);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> radius(0.1, 10.0);

    DecayCheck check;
    check.worst = -std::numeric_limits<double>::infinity();
    check.best = std::numeric_limits<double>::infinity();
    auto probe = [&](Vec2 x) {
        const double r = decay_ratio(m, ly, x);
        check.worst = std::max(check.worst, r);
        check.best = std::min(check.best, r);
    };
    // The extreme ratios sit on the coordinate axes through the equilibrium,
    // so sample those explicitly alongside the random directions.
    probe(ly.center + Vec2{1.0, 0.0});
    probe(ly.center + Vec2{0.0, 1.0});
    for (int p = 0; p < n_points; ++p) {
        const double phi = angle(rng);
        probe(ly.center + radius(rng) * Vec2{std::cos(phi), std::sin(phi)});
    }
    return check;
}

InclusionCheck inclusion_check(const planar::SublevelSet& inner, const planar::SublevelSet& outer,
                               int n_samples) {
    if (n_samples < 16) throw Error(errc::invalid_argument, "need at least 16 samples");
    InclusionCheck check;
    const double tol = 1e-9 * std::max(1.0, outer.k);
    auto probe = [&](Vec2 x) {
        const double excess = outer.lyapunov.value(x) - outer.k;
        if (excess > check.worst_violation) check.worst_violation = excess;
        if (excess > tol) check.ok = false;
    };
    for (int j = 0; j < n_samples; ++j)
        probe(inner.lyapunov.boundary_point(inner.k, kTwoPi * j / n_samples));
    // Interior coverage: a deterministic spiral, uniform in area via sqrt
    // radial spacing and golden-angle rotation.
    constexpr double golden_angle = 2.3999632297286533;
    for (int j = 0; j < n_samples; ++j) {
        const double level = inner.k * (j + 0.5) / n_samples;
        probe(inner.lyapunov.boundary_point(level, golden_angle * j));
    }
    return check;
}

planar::Mode random_mode(std::mt19937_64& rng, const std::string& id) {
    std::uniform_real_distribution<double> b_entry(-3.0, 3.0);
    while (true) {
        planar::Mode m;
        m.id = id;
        m.a = draw_entry(rng);
        m.b = draw_entry(rng);
        m.c = draw_entry(rng);
        m.d = draw_entry(rng);
        if (!planar::is_valid_mode(m)) continue;
        m.B = {b_entry(rng), b_entry(rng)};
        return m;
    }
}

planar::Mode random_mode_shared(std::mt19937_64& rng, const std::string& id,
                                const planar::Mode& base) {
    std::uniform_real_distribution<double> b_entry(-3.0, 3.0);
    while (true) {
        planar::Mode m;
        m.id = id;
        m.b = base.b;
        m.c = base.c;
        m.a = draw_entry(rng);
        m.d = draw_entry(rng);
        if (!planar::is_valid_mode(m)) continue;
        m.B = {b_entry(rng), b_entry(rng)};
        return m;
    }
}

}  // namespace switchcert::oracle
