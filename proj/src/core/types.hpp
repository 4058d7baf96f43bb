#pragma once

#include <cmath>

namespace switchcert {

/// Planar state / offset vector.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x1, s * v.x2}; }

    double dot(Vec2 o) const { return x1 * o.x1 + x2 * o.x2; }
    double norm() const { return std::hypot(x1, x2); }
    bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
};

/// 2x2 matrix, row-major [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }

    Vec2 apply(Vec2 v) const { return {a * v.x1 + b * v.x2, c * v.x1 + d * v.x2}; }

    friend Mat2 operator+(Mat2 p, Mat2 q) { return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d}; }
    friend Mat2 operator*(double s, Mat2 m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    }
};

}  // namespace switchcert
