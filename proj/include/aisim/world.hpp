#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aisim/geometry.hpp"
#include "aisim/platform.hpp"

namespace aisim {

enum class WorldKind { maze_markers, block_search };

WorldKind parse_world_kind(const std::string& name);
std::string to_string(WorldKind kind);

enum class BlobDir { none, left, centre, right };

struct Target {
    Vec2 centre;
    double radius = 0.0;
    int colour = 0;
    bool active = true;
};

struct Pose {
    double x = 0.0, y = 0.0, theta = 0.0;
};

struct Blob {
    BlobDir dir = BlobDir::centre;
    double area = 0.0;  // apparent size proxy (radius / distance)
};

struct SensorFrame {
    std::vector<double> distances;  // platform sensor units
    std::optional<Blob> blob;
};

// Sensor model knobs. The infrared response is a monotone decreasing curve
// pinned at two calibration anchors (distance from the body surface).
struct SenseConfig {
    double ir_near_distance = 0.01;
    double ir_near_reading = 2400.0;
    double ir_far_distance = 0.05;
    double ir_far_reading = 250.0;
    double ir_max_reading = 4095.0;
    double camera_fov = M_PI / 3.0;  // 60 degrees, split into equal thirds
};

struct World {
    std::vector<Segment> segments;
    std::vector<Target> targets;
    Pose robot{};
    double clock = 0.0;
    bool contact = false;      // physical contact during the last step
    int goal_target = -1;      // index into targets
    double goal_margin = 0.0;  // extra reach distance beyond body + target radius
};

// Unicycle integration followed by penetration resolution against all segments.
void step(World& world, const BodyVelocity& vel, double dt, double body_radius);

// Ray-cast distance readings under the profile's sensor model, plus blob finding
// over the active targets within the camera field of view.
SensorFrame sense(const World& world, const PlatformProfile& profile,
                  const SenseConfig& cfg = {});

// Infrared reading for a given surface distance (exponential through the anchors).
double ir_reading(double dist, const SenseConfig& cfg = {});

bool goal_reached(const World& world, double body_radius);
double goal_distance(const World& world);  // centre-to-centre, metres

// Deactivate every non-goal marker whose doorway the robot has passed, so the
// camera tracks the next marker along the corridor rather than one behind.
void clear_passed_markers(World& world, double body_radius);

// Procedural worlds; identical (kind, seed, scale) produce identical worlds.
World generate_world(WorldKind kind, std::uint64_t seed, double scale);

// Line-oriented text description (segments, targets, start pose, goal) for
// replay and byte-level determinism checks.
std::string describe(const World& world);

}  // namespace aisim
