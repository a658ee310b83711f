#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace idiobot {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

inline Vec2 heading_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Wraps an angle into [-pi, pi).
inline double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

// Distance from point p to segment s.
inline double point_segment_distance(const Vec2& p, const Segment& s) {
    const Vec2 e = s.b - s.a;
    const double len2 = e.dot(e);
    if (len2 <= 0.0) return (p - s.a).norm();
    const double t = std::clamp((p - s.a).dot(e) / len2, 0.0, 1.0);
    return (p - (s.a + e * t)).norm();
}

// Distance along the ray (origin, unit dir) to the segment, or +inf on a miss.
inline double ray_segment_distance(const Vec2& origin, const Vec2& dir, const Segment& s) {
    const Vec2 e = s.b - s.a;
    const double denom = dir.cross(e);
    if (std::fabs(denom) < 1e-15) return std::numeric_limits<double>::infinity();
    const Vec2 ao = s.a - origin;
    const double t = ao.cross(e) / denom;
    const double u = ao.cross(dir) / denom;
    if (t < 0.0 || u < 0.0 || u > 1.0) return std::numeric_limits<double>::infinity();
    return t;
}

// Distance along the ray to a circle boundary, or +inf on a miss. An origin
// inside the circle reports the exit distance.
inline double ray_circle_distance(const Vec2& origin, const Vec2& dir, const Vec2& center,
                                  double radius) {
    const Vec2 oc = origin - center;
    const double b = oc.dot(dir);
    const double c = oc.dot(oc) - radius * radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    const double root = std::sqrt(disc);
    const double t1 = -b - root;
    if (t1 >= 0.0) return t1;
    const double t2 = -b + root;
    if (t2 >= 0.0) return t2;
    return std::numeric_limits<double>::infinity();
}

// Exact unicycle arc for one step of duration dt at constant (v, w).
inline Pose advance_pose(const Pose& p, double v, double w, double dt) {
    if (std::fabs(w) < 1e-9) {
        return {p.x + v * dt * std::cos(p.theta), p.y + v * dt * std::sin(p.theta), p.theta};
    }
    const double r = v / w;
    const double theta2 = p.theta + w * dt;
    return {p.x + r * (std::sin(theta2) - std::sin(p.theta)),
            p.y - r * (std::cos(theta2) - std::cos(p.theta)), theta2};
}

} // namespace idiobot
