#pragma once

#include <cmath>

namespace pucci {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    double dot(Point o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    /// Polar angle in [0, 2*pi).
    double angle() const {
        double a = std::atan2(y, x);
        return a < 0 ? a + 2.0 * M_PI : a;
    }
};

inline Point operator*(double s, Point p) { return p * s; }

/// Signed angular difference wrapped to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a > M_PI) a -= 2.0 * M_PI;
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

} // namespace pucci
