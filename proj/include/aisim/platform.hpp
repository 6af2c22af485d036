#pragma once

#include <istream>
#include <string>
#include <vector>

namespace aisim {

// One epuck speed unit: radians of wheel rotation. Wheel speeds throughout the
// system are expressed in these units per second.
inline constexpr double kEpuckSpeedUnit = 0.00683;

enum class SensorModality { infrared_nonlinear, sonar_linear };
enum class Side { right, rear, left };
enum class SteeringInterface { wheel_speeds, velocity_yaw };

// A robot platform as data: geometry, sensor layout, thresholds, steering.
struct PlatformProfile {
    std::string name;
    double wheel_radius = 0.0;   // metres
    double axle_length = 0.0;    // metres
    double body_radius = 0.0;    // metres, circumscribed
    SensorModality modality = SensorModality::infrared_nonlinear;
    int sensor_count = 0;
    std::vector<double> sensor_angles;    // radians, robot frame, positive = left
    std::vector<Side> orientation_map;    // sensor index -> side
    double obstacle_threshold = 0.0;      // I1, sensor units
    double collision_threshold = 0.0;     // I2, sensor units
    double zeta = 1.0;                    // turn-rate scale for Eq-8 style conversion
    SteeringInterface steering = SteeringInterface::wheel_speeds;
    double max_speed = 900.0;             // |wheel speed| cap, speed units per second
    double sensor_min = 0.0;              // clamp range for distance readings
    double sensor_max = 0.0;              // (unused for infrared; see SenseConfig)
};

// Sanity checks the cross-field invariants (threshold ordering per modality,
// sensor list lengths); throws std::runtime_error on violation.
void validate_profile(const PlatformProfile& p);

struct WheelCommand {
    double left = 0.0;   // speed units per second
    double right = 0.0;
};

struct BodyVelocity {
    double linear = 0.0;  // metres per second
    double yaw = 0.0;     // radians per second, positive = anticlockwise
};

// Wheel speeds evolved for the epuck driven on the Pioneer: v from the Pioneer
// wheel radius, yaw from the epuck geometry scaled by the Pioneer's zeta.
BodyVelocity to_body_velocity(const WheelCommand& cmd, const PlatformProfile& pioneer,
                              const PlatformProfile& epuck);

// Standard differential-drive kinematics for the epuck itself.
BodyVelocity epuck_direct_drive(const WheelCommand& cmd, const PlatformProfile& epuck);

// Built-in profiles.
PlatformProfile epuck_profile();
PlatformProfile pioneer_sim_profile();
// Real-world Pioneer values (zeta = 0.750, I1 = 0.30); shipped for completeness,
// never exercised by the simulated experiments.
PlatformProfile pioneer_real_profile();

// Named built-in lookup ("epuck", "pioneer_sim", "pioneer_real"); throws on unknown name.
PlatformProfile builtin_profile(const std::string& name);

// Key-value profile file, keys in snake_case, lengths in metres.
PlatformProfile load_profile(std::istream& in);

}  // namespace aisim
