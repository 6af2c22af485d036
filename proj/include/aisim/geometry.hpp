#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace aisim {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Wall or obstacle edge, in metres.
struct Segment {
    Vec2 a, b;
};

// Normalize an angle into (-pi, pi].
double wrap_angle(double a);

// Parameter t >= 0 such that origin + t*dir lies on the segment, if the ray hits it.
std::optional<double> ray_segment(Vec2 origin, Vec2 dir, const Segment& seg);

// Distance from origin along bearing to the nearest segment, or max_range if none hit.
double raycast(Vec2 origin, double bearing, const std::vector<Segment>& segments,
               double max_range);

// Point on the segment closest to p.
Vec2 closest_point(Vec2 p, const Segment& seg);

}  // namespace aisim
