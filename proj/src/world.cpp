#include "aisim/world.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "aisim/rng.hpp"

namespace aisim {

namespace {

constexpr double kBigRange = 1e6;

void append_box(std::vector<Segment>& segs, Vec2 centre, double hx, double hy, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    auto corner = [&](double dx, double dy) {
        return Vec2{centre.x + dx * c - dy * s, centre.y + dx * s + dy * c};
    };
    const Vec2 p0 = corner(-hx, -hy), p1 = corner(hx, -hy), p2 = corner(hx, hy),
               p3 = corner(-hx, hy);
    segs.push_back({p0, p1});
    segs.push_back({p1, p2});
    segs.push_back({p2, p3});
    segs.push_back({p3, p0});
}

void append_rect(std::vector<Segment>& segs, double x0, double y0, double x1, double y1) {
    segs.push_back({{x0, y0}, {x1, y0}});
    segs.push_back({{x1, y0}, {x1, y1}});
    segs.push_back({{x1, y1}, {x0, y1}});
    segs.push_back({{x0, y1}, {x0, y0}});
}

double clearance(const std::vector<Segment>& segs, Vec2 p) {
    double best = kBigRange;
    for (const Segment& s : segs) best = std::min(best, distance(p, closest_point(p, s)));
    return best;
}

}  // namespace

WorldKind parse_world_kind(const std::string& name) {
    if (name == "maze_markers" || name == "maze") return WorldKind::maze_markers;
    if (name == "block_search" || name == "block") return WorldKind::block_search;
    throw std::runtime_error("unknown world kind '" + name + "'");
}

std::string to_string(WorldKind kind) {
    return kind == WorldKind::maze_markers ? "maze_markers" : "block_search";
}

void step(World& world, const BodyVelocity& vel, double dt, double body_radius) {
    if (dt <= 0.0) throw std::runtime_error("step requires dt > 0");
    const Vec2 before{world.robot.x, world.robot.y};
    world.robot.x += vel.linear * std::cos(world.robot.theta) * dt;
    world.robot.y += vel.linear * std::sin(world.robot.theta) * dt;
    world.robot.theta = wrap_angle(world.robot.theta + vel.yaw * dt);

    world.contact = false;
    Vec2 centre{world.robot.x, world.robot.y};
    for (int iter = 0; iter < 4; ++iter) {
        bool moved = false;
        for (const Segment& s : world.segments) {
            const Vec2 cp = closest_point(centre, s);
            const double d = distance(centre, cp);
            if (d < body_radius - 1e-9) {
                world.contact = true;
                Vec2 n;
                if (d > 1e-9) {
                    n = (centre - cp) * (1.0 / d);
                } else {
                    // centre exactly on the segment: push back towards where we came from
                    const Vec2 v = s.b - s.a;
                    n = {-v.y, v.x};
                    const double len = norm(n);
                    n = n * (1.0 / len);
                    if (dot(before - cp, n) < 0.0) n = n * -1.0;
                }
                centre = cp + n * body_radius;
                moved = true;
            }
        }
        if (!moved) break;
    }
    world.robot.x = centre.x;
    world.robot.y = centre.y;
    world.clock += dt;
}

double ir_reading(double dist, const SenseConfig& cfg) {
    const double b = std::log(cfg.ir_near_reading / cfg.ir_far_reading) /
                     (cfg.ir_far_distance - cfg.ir_near_distance);
    const double a = cfg.ir_near_reading * std::exp(b * cfg.ir_near_distance);
    const double r = a * std::exp(-b * dist);
    return std::clamp(r, 0.0, cfg.ir_max_reading);
}

SensorFrame sense(const World& world, const PlatformProfile& profile, const SenseConfig& cfg) {
    SensorFrame frame;
    frame.distances.reserve(profile.sensor_count);
    const Vec2 centre{world.robot.x, world.robot.y};
    for (int i = 0; i < profile.sensor_count; ++i) {
        const double bearing = world.robot.theta + profile.sensor_angles[i];
        const double hit = raycast(centre, bearing, world.segments, kBigRange);
        const double surface = std::max(0.0, hit - profile.body_radius);
        if (profile.modality == SensorModality::sonar_linear) {
            frame.distances.push_back(std::clamp(surface, profile.sensor_min, profile.sensor_max));
        } else {
            frame.distances.push_back(ir_reading(surface, cfg));
        }
    }

    // Blob finding: largest unoccluded active target within the field of view.
    double best_area = 0.0;
    for (const Target& t : world.targets) {
        if (!t.active) continue;
        const Vec2 to = t.centre - centre;
        const double dist = norm(to);
        if (dist < 1e-9) continue;
        const double rel = wrap_angle(std::atan2(to.y, to.x) - world.robot.theta);
        if (std::abs(rel) > cfg.camera_fov / 2.0) continue;
        const double hit = raycast(centre, std::atan2(to.y, to.x), world.segments, kBigRange);
        if (hit < dist - t.radius) continue;  // occluded by a wall
        const double area = t.radius / dist;
        if (area > best_area) {
            best_area = area;
            Blob blob;
            blob.area = area;
            if (rel > cfg.camera_fov / 6.0) {
                blob.dir = BlobDir::left;
            } else if (rel < -cfg.camera_fov / 6.0) {
                blob.dir = BlobDir::right;
            } else {
                blob.dir = BlobDir::centre;
            }
            frame.blob = blob;
        }
    }
    return frame;
}

bool goal_reached(const World& world, double body_radius) {
    if (world.goal_target < 0) return false;
    const Target& t = world.targets[world.goal_target];
    return goal_distance(world) <= body_radius + t.radius + world.goal_margin;
}

double goal_distance(const World& world) {
    if (world.goal_target < 0) return kBigRange;
    const Target& t = world.targets[world.goal_target];
    return distance({world.robot.x, world.robot.y}, t.centre);
}

void clear_passed_markers(World& world, double body_radius) {
    // Door markers sit on the dividing walls of the corridor, which runs along
    // +x. A marker is cleared once the robot is through its doorway, so the
    // camera hands over to the next marker instead of luring the robot back.
    for (std::size_t t = 0; t < world.targets.size(); ++t) {
        if (static_cast<int>(t) == world.goal_target) continue;
        Target& marker = world.targets[t];
        if (!marker.active) continue;
        const bool passed = world.robot.x > marker.centre.x;
        const bool touched =
            distance({world.robot.x, world.robot.y}, marker.centre) <=
            marker.radius + body_radius;
        if (passed || touched) marker.active = false;
    }
}

namespace {

World generate_maze(Rng& rng, double s) {
    World w;
    const int rooms = 4;
    append_rect(w.segments, 0.0, 0.0, rooms * s, s);

    for (int r = 1; r < rooms; ++r) {
        const double x = r * s;
        const double gap = 0.6 * s;
        const double gy = rng.uniform(0.3 * s, 0.7 * s);
        w.segments.push_back({{x, 0.0}, {x, gy - gap / 2.0}});
        w.segments.push_back({{x, gy + gap / 2.0}, {x, s}});
        w.targets.push_back({{x, gy}, 0.04 * s, 1, true});
    }

    const double fx = rng.uniform(3.4 * s, 3.7 * s);
    const double fy = rng.uniform(0.3 * s, 0.7 * s);
    w.targets.push_back({{fx, fy}, 0.06 * s, 1, true});
    w.goal_target = static_cast<int>(w.targets.size()) - 1;
    w.goal_margin = 0.1 * s;

    w.robot.x = rng.uniform(0.3 * s, 0.5 * s);
    w.robot.y = rng.uniform(0.3 * s, 0.7 * s);
    w.robot.theta = rng.uniform(-M_PI, M_PI);
    return w;
}

World generate_block_search(Rng& rng, double s) {
    World w;
    append_rect(w.segments, 0.0, 0.0, s, s);

    const Vec2 target{rng.uniform(0.15 * s, 0.85 * s), rng.uniform(0.15 * s, 0.85 * s)};
    const double target_radius = 0.05 * s;

    int want = rng.uniform_int(5, 10);
    std::vector<Segment> obstacles;
    for (int k = 0; k < want; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            const Vec2 c{rng.uniform(0.12 * s, 0.88 * s), rng.uniform(0.12 * s, 0.88 * s)};
            const double hx = rng.uniform(0.04 * s, 0.09 * s);
            const double hy = rng.uniform(0.04 * s, 0.09 * s);
            const double ang = rng.uniform(0.0, M_PI);
            std::vector<Segment> box;
            append_box(box, c, hx, hy, ang);
            bool ok = true;
            for (const Segment& seg : box) {
                if (distance(target, closest_point(target, seg)) < target_radius + 0.08 * s) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                obstacles.insert(obstacles.end(), box.begin(), box.end());
                placed = true;
            }
        }
        // placement may fail on crowded seeds; the obstacle count relaxes downwards
    }

    w.segments.insert(w.segments.end(), obstacles.begin(), obstacles.end());
    w.targets.push_back({target, target_radius, 2, true});
    w.goal_target = 0;
    w.goal_margin = 0.0;

    for (int attempt = 0;; ++attempt) {
        const Vec2 p{rng.uniform(0.12 * s, 0.88 * s), rng.uniform(0.12 * s, 0.88 * s)};
        const bool clear = clearance(w.segments, p) >= 0.11 * s;
        const bool far = distance(p, target) >= 0.3 * s;
        if (clear && far) {
            w.robot.x = p.x;
            w.robot.y = p.y;
            w.robot.theta = rng.uniform(-M_PI, M_PI);
            break;
        }
        if (attempt > 500) {
            // give up on clutter: remove the last obstacle box and keep trying
            if (w.segments.size() > 4) w.segments.resize(w.segments.size() - 4);
            attempt = 0;
        }
    }
    return w;
}

}  // namespace

World generate_world(WorldKind kind, std::uint64_t seed, double scale) {
    Rng rng = Rng(seed).derive(kind == WorldKind::maze_markers ? 11 : 22);
    return kind == WorldKind::maze_markers ? generate_maze(rng, scale)
                                           : generate_block_search(rng, scale);
}

std::string describe(const World& world) {
    std::string out;
    char buf[160];
    for (const Segment& s : world.segments) {
        std::snprintf(buf, sizeof buf, "segment %.6f %.6f %.6f %.6f\n", s.a.x, s.a.y, s.b.x,
                      s.b.y);
        out += buf;
    }
    for (const Target& t : world.targets) {
        std::snprintf(buf, sizeof buf, "target %.6f %.6f %.6f %d %d\n", t.centre.x, t.centre.y,
                      t.radius, t.colour, t.active ? 1 : 0);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "start %.6f %.6f %.6f\n", world.robot.x, world.robot.y,
                  world.robot.theta);
    out += buf;
    std::snprintf(buf, sizeof buf, "goal %d %.6f\n", world.goal_target, world.goal_margin);
    out += buf;
    return out;
}

}  // namespace aisim
