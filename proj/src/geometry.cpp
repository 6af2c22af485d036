#include "aisim/geometry.hpp"

#include <limits>

namespace aisim {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

std::optional<double> ray_segment(Vec2 origin, Vec2 dir, const Segment& seg) {
    const Vec2 v = seg.b - seg.a;
    const double denom = cross(dir, v);
    if (std::abs(denom) < 1e-15) return std::nullopt;  // parallel
    const Vec2 w = seg.a - origin;
    const double t = cross(w, v) / denom;  // along the ray
    const double u = cross(w, dir) / denom;  // along the segment
    if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return t;
}

double raycast(Vec2 origin, double bearing, const std::vector<Segment>& segments,
               double max_range) {
    const Vec2 dir{std::cos(bearing), std::sin(bearing)};
    double best = max_range;
    for (const Segment& s : segments) {
        if (auto t = ray_segment(origin, dir, s); t && *t < best) best = *t;
    }
    return best;
}

Vec2 closest_point(Vec2 p, const Segment& seg) {
    const Vec2 v = seg.b - seg.a;
    const double len2 = dot(v, v);
    if (len2 < 1e-30) return seg.a;
    double u = dot(p - seg.a, v) / len2;
    if (u < 0.0) u = 0.0;
    if (u > 1.0) u = 1.0;
    return seg.a + v * u;
}

}  // namespace aisim
