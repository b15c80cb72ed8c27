#pragma once

#include <algorithm>
#include <cmath>

namespace mrpost {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2 &o) const { return x * o.x + y * o.y; }
    double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }
};

/// A 2D capsule: the set of points within `radius` of segment [a, b].
/// A zero-length segment (a == b) degenerates to a disc.
struct Capsule {
    Vec2 a;
    Vec2 b;
    double radius = 0.0;
};

/// Axis-aligned rectangle given by min/max corners, treated as solid.
struct Rect {
    Vec2 lo;
    Vec2 hi;
};

double point_segment_dist_sq(const Vec2 &p, const Vec2 &a, const Vec2 &b);
double segment_segment_dist_sq(const Vec2 &p1, const Vec2 &q1, const Vec2 &p2, const Vec2 &q2);

/// Distance from a segment to a solid axis-aligned rectangle (0 if they intersect).
double segment_rect_dist(const Vec2 &a, const Vec2 &b, const Rect &r);

/// Strict-inequality overlap tests; two shapes exactly at touching
/// distance do not count as colliding.
bool capsules_overlap(const Capsule &c1, const Capsule &c2);
bool capsule_circle_overlap(const Capsule &c, const Vec2 &center, double radius);
bool capsule_rect_overlap(const Capsule &c, const Rect &r);

}  // namespace mrpost
