#include "aisim/platform.hpp"

#include <cmath>
#include <stdexcept>

#include "aisim/config.hpp"

namespace aisim {

namespace {

double deg(double d) { return d * M_PI / 180.0; }

Side side_from_string(const std::string& s) {
    if (s == "right") return Side::right;
    if (s == "rear") return Side::rear;
    if (s == "left") return Side::left;
    throw std::runtime_error("unknown side '" + s + "'");
}

}  // namespace

void validate_profile(const PlatformProfile& p) {
    if (static_cast<int>(p.sensor_angles.size()) != p.sensor_count ||
        static_cast<int>(p.orientation_map.size()) != p.sensor_count) {
        throw std::runtime_error("profile " + p.name +
                                 ": sensor_angles/orientation_map must match sensor_count");
    }
    if (p.modality == SensorModality::infrared_nonlinear) {
        if (p.collision_threshold <= p.obstacle_threshold) {
            throw std::runtime_error("profile " + p.name + ": infrared requires I2 > I1");
        }
    } else {
        if (p.collision_threshold >= p.obstacle_threshold) {
            throw std::runtime_error("profile " + p.name + ": sonar requires I2 < I1");
        }
    }
    if (p.wheel_radius <= 0 || p.axle_length <= 0 || p.body_radius <= 0) {
        throw std::runtime_error("profile " + p.name + ": geometry must be positive");
    }
}

BodyVelocity to_body_velocity(const WheelCommand& cmd, const PlatformProfile& pioneer,
                              const PlatformProfile& epuck) {
    BodyVelocity out;
    out.linear = kEpuckSpeedUnit * pioneer.wheel_radius * (cmd.right + cmd.left) / 2.0;
    out.yaw = pioneer.zeta * kEpuckSpeedUnit * epuck.wheel_radius * (cmd.right - cmd.left) /
              epuck.axle_length;
    return out;
}

BodyVelocity epuck_direct_drive(const WheelCommand& cmd, const PlatformProfile& epuck) {
    BodyVelocity out;
    out.linear = kEpuckSpeedUnit * epuck.wheel_radius * (cmd.right + cmd.left) / 2.0;
    out.yaw = kEpuckSpeedUnit * epuck.wheel_radius * (cmd.right - cmd.left) / epuck.axle_length;
    return out;
}

PlatformProfile epuck_profile() {
    PlatformProfile p;
    p.name = "epuck";
    p.wheel_radius = 0.0205;
    p.axle_length = 0.052;
    p.body_radius = 0.035;
    p.modality = SensorModality::infrared_nonlinear;
    p.sensor_count = 8;
    // Ring of 8 IR sensors; indices 0-2 right, 3-4 rear, 5-7 left.
    p.sensor_angles = {deg(-17), deg(-49), deg(-90), deg(-150),
                       deg(150), deg(90),  deg(49),  deg(17)};
    p.orientation_map = {Side::right, Side::right, Side::right, Side::rear,
                         Side::rear,  Side::left,  Side::left,  Side::left};
    p.obstacle_threshold = 250.0;
    p.collision_threshold = 2400.0;
    p.zeta = 1.0;
    p.steering = SteeringInterface::wheel_speeds;
    p.sensor_min = 0.0;
    p.sensor_max = 4095.0;
    validate_profile(p);
    return p;
}

namespace {

PlatformProfile pioneer_base() {
    PlatformProfile p;
    p.wheel_radius = 0.095;
    p.axle_length = 0.33;
    p.body_radius = 0.29;  // circumscribes the 44 x 38 cm octagonal body
    p.modality = SensorModality::sonar_linear;
    p.sensor_count = 16;
    // Standard 16-sonar fan: front octant 0-7 left to right, rear octant 8-15.
    // Indices 4-9 face right, 10-13 rear, 0-3 and 14-15 left.
    p.sensor_angles = {deg(90),   deg(50),   deg(30),   deg(10),
                       deg(-10),  deg(-30),  deg(-50),  deg(-90),
                       deg(-90),  deg(-130), deg(-150), deg(-170),
                       deg(170),  deg(150),  deg(130),  deg(90)};
    p.orientation_map = {Side::left,  Side::left,  Side::left,  Side::left,
                         Side::right, Side::right, Side::right, Side::right,
                         Side::right, Side::right, Side::rear,  Side::rear,
                         Side::rear,  Side::rear,  Side::left,  Side::left};
    p.steering = SteeringInterface::velocity_yaw;
    p.sensor_min = 0.15;
    p.sensor_max = 5.0;
    return p;
}

}  // namespace

PlatformProfile pioneer_sim_profile() {
    PlatformProfile p = pioneer_base();
    p.name = "pioneer_sim";
    p.obstacle_threshold = 0.15;
    p.collision_threshold = 0.04;
    p.zeta = 1.575;
    validate_profile(p);
    return p;
}

PlatformProfile pioneer_real_profile() {
    PlatformProfile p = pioneer_base();
    p.name = "pioneer_real";
    p.obstacle_threshold = 0.30;
    p.collision_threshold = 0.04;
    p.zeta = 0.750;
    validate_profile(p);
    return p;
}

PlatformProfile builtin_profile(const std::string& name) {
    if (name == "epuck") return epuck_profile();
    if (name == "pioneer_sim") return pioneer_sim_profile();
    if (name == "pioneer_real") return pioneer_real_profile();
    throw std::runtime_error("unknown platform profile '" + name + "'");
}

PlatformProfile load_profile(std::istream& in) {
    const IniFile ini = IniFile::parse(in);
    const std::string sec = "platform";

    PlatformProfile p;
    p.name = ini.get(sec, "name", "custom");
    p.wheel_radius = ini.get_double(sec, "wheel_radius", 0.0);
    p.axle_length = ini.get_double(sec, "axle_length", 0.0);
    p.body_radius = ini.get_double(sec, "body_radius", 0.0);
    const std::string modality = ini.get(sec, "sensor_modality", "infrared_nonlinear");
    if (modality == "infrared_nonlinear") {
        p.modality = SensorModality::infrared_nonlinear;
    } else if (modality == "sonar_linear") {
        p.modality = SensorModality::sonar_linear;
    } else {
        throw std::runtime_error("unknown sensor_modality '" + modality + "'");
    }
    p.sensor_count = ini.get_int(sec, "sensor_count", 0);
    for (const std::string& a : ini.get_list(sec, "sensor_angles")) {
        p.sensor_angles.push_back(std::stod(a));
    }
    for (const std::string& s : ini.get_list(sec, "orientation_map")) {
        p.orientation_map.push_back(side_from_string(s));
    }
    p.obstacle_threshold = ini.get_double(sec, "obstacle_threshold", 0.0);
    p.collision_threshold = ini.get_double(sec, "collision_threshold", 0.0);
    p.zeta = ini.get_double(sec, "zeta", 1.0);
    const std::string steering = ini.get(sec, "steering_interface", "wheel_speeds");
    if (steering == "wheel_speeds") {
        p.steering = SteeringInterface::wheel_speeds;
    } else if (steering == "velocity_yaw") {
        p.steering = SteeringInterface::velocity_yaw;
    } else {
        throw std::runtime_error("unknown steering_interface '" + steering + "'");
    }
    p.max_speed = ini.get_double(sec, "max_speed", 900.0);
    p.sensor_min = ini.get_double(sec, "sensor_min", 0.0);
    p.sensor_max = ini.get_double(sec, "sensor_max", 0.0);
    validate_profile(p);
    return p;
}

}  // namespace aisim
