#include "mrpost/geometry.hpp"

namespace mrpost {

double point_segment_dist_sq(const Vec2 &p, const Vec2 &a, const Vec2 &b) {
    const Vec2 ab = b - a;
    const double len_sq = ab.norm_sq();
    if (len_sq <= 0.0) {
        return (p - a).norm_sq();
    }
    double t = (p - a).dot(ab) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 closest = a + ab * t;
    return (p - closest).norm_sq();
}

// Closest distance between segments [p1,q1] and [p2,q2] (Ericson,
// Real-Time Collision Detection, 5.1.9), with degenerate segments
// handled as points.
double segment_segment_dist_sq(const Vec2 &p1, const Vec2 &q1, const Vec2 &p2, const Vec2 &q2) {
    const Vec2 d1 = q1 - p1;
    const Vec2 d2 = q2 - p2;
    const Vec2 r = p1 - p2;
    const double a = d1.norm_sq();
    const double e = d2.norm_sq();
    const double f = d2.dot(r);

    double s = 0.0;
    double t = 0.0;
    constexpr double kEps = 1e-18;

    if (a <= kEps && e <= kEps) {
        return r.norm_sq();
    }
    if (a <= kEps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= kEps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            if (denom > kEps) {
                s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            }
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    const Vec2 c1 = p1 + d1 * s;
    const Vec2 c2 = p2 + d2 * t;
    return (c1 - c2).norm_sq();
}

namespace {

bool point_in_rect(const Vec2 &p, const Rect &r) {
    return p.x >= r.lo.x && p.x <= r.hi.x && p.y >= r.lo.y && p.y <= r.hi.y;
}

}  // namespace

double segment_rect_dist(const Vec2 &a, const Vec2 &b, const Rect &r) {
    if (point_in_rect(a, r) || point_in_rect(b, r)) {
        return 0.0;
    }
    const Vec2 c00 = r.lo;
    const Vec2 c10 = {r.hi.x, r.lo.y};
    const Vec2 c11 = r.hi;
    const Vec2 c01 = {r.lo.x, r.hi.y};
    double best = segment_segment_dist_sq(a, b, c00, c10);
    best = std::min(best, segment_segment_dist_sq(a, b, c10, c11));
    best = std::min(best, segment_segment_dist_sq(a, b, c11, c01));
    best = std::min(best, segment_segment_dist_sq(a, b, c01, c00));
    return std::sqrt(best);
}

bool capsules_overlap(const Capsule &c1, const Capsule &c2) {
    const double rsum = c1.radius + c2.radius;
    return segment_segment_dist_sq(c1.a, c1.b, c2.a, c2.b) < rsum * rsum;
}

bool capsule_circle_overlap(const Capsule &c, const Vec2 &center, double radius) {
    const double rsum = c.radius + radius;
    return point_segment_dist_sq(center, c.a, c.b) < rsum * rsum;
}

bool capsule_rect_overlap(const Capsule &c, const Rect &r) {
    return segment_rect_dist(c.a, c.b, r) < c.radius;
}

}  // namespace mrpost
