#include <cmath>
#include <sstream>

#include "aisim/platform.hpp"
#include "doctest.h"

using namespace aisim;

TEST_CASE("wheel-to-body conversion matches closed-form evaluation") {
    const PlatformProfile pioneer = pioneer_sim_profile();
    const PlatformProfile epuck = epuck_profile();

    SUBCASE("equal wheels drive straight") {
        const BodyVelocity v = to_body_velocity({600, 600}, pioneer, epuck);
        const double expected_v = kEpuckSpeedUnit * 0.095 * (600.0 + 600.0) / 2.0;
        CHECK(v.linear == doctest::Approx(expected_v).epsilon(1e-12));
        CHECK(v.yaw == 0.0);
    }

    SUBCASE("wheel difference turns with the epuck geometry scaled by zeta") {
        const BodyVelocity v = to_body_velocity({400, 600}, pioneer, epuck);
        const double expected_w = 1.575 * kEpuckSpeedUnit * 0.0205 * (600.0 - 400.0) / 0.052;
        const double expected_v = kEpuckSpeedUnit * 0.095 * (600.0 + 400.0) / 2.0;
        CHECK(v.yaw == doctest::Approx(expected_w).epsilon(1e-12));
        CHECK(v.linear == doctest::Approx(expected_v).epsilon(1e-12));
    }

    SUBCASE("swapping wheels negates yaw and preserves speed") {
        const BodyVelocity a = to_body_velocity({400, 600}, pioneer, epuck);
        const BodyVelocity b = to_body_velocity({600, 400}, pioneer, epuck);
        CHECK(b.yaw == -a.yaw);
        CHECK(b.linear == a.linear);
    }

    SUBCASE("conversion is linear in the wheel speeds") {
        const BodyVelocity a = to_body_velocity({250, 480}, pioneer, epuck);
        const BodyVelocity b = to_body_velocity({500, 960}, pioneer, epuck);
        CHECK(b.linear == doctest::Approx(2.0 * a.linear).epsilon(1e-12));
        CHECK(b.yaw == doctest::Approx(2.0 * a.yaw).epsilon(1e-12));
    }
}

TEST_CASE("epuck direct drive kinematics") {
    const PlatformProfile epuck = epuck_profile();

    CHECK(epuck_direct_drive({600, 600}, epuck).yaw == 0.0);
    CHECK(epuck_direct_drive({0, 0}, epuck).linear == 0.0);
    CHECK(epuck_direct_drive({0, 0}, epuck).yaw == 0.0);

    const BodyVelocity spin = epuck_direct_drive({-300, 300}, epuck);
    const double expected_w = kEpuckSpeedUnit * 0.0205 * 600.0 / 0.052;
    CHECK(spin.linear == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(spin.yaw == doctest::Approx(expected_w).epsilon(1e-12));
}

TEST_CASE("per unit wheel-speed difference the Pioneer turns zeta times the epuck") {
    const PlatformProfile pioneer = pioneer_sim_profile();
    const PlatformProfile epuck = epuck_profile();
    const WheelCommand cmd{350, 520};
    const double pioneer_w = to_body_velocity(cmd, pioneer, epuck).yaw;
    const double epuck_w = epuck_direct_drive(cmd, epuck).yaw;
    CHECK(pioneer_w / epuck_w == doctest::Approx(pioneer.zeta).epsilon(1e-12));
}

TEST_CASE("built-in profiles satisfy their invariants") {
    const PlatformProfile e = epuck_profile();
    CHECK(e.sensor_count == 8);
    CHECK(e.collision_threshold > e.obstacle_threshold);  // IR: higher = closer
    CHECK(e.sensor_angles.size() == 8);
    CHECK(e.orientation_map[0] == Side::right);
    CHECK(e.orientation_map[3] == Side::rear);
    CHECK(e.orientation_map[7] == Side::left);

    const PlatformProfile p = pioneer_sim_profile();
    CHECK(p.sensor_count == 16);
    CHECK(p.collision_threshold < p.obstacle_threshold);  // sonar: lower = closer
    CHECK(p.zeta == 1.575);
    CHECK(p.orientation_map[4] == Side::right);
    CHECK(p.orientation_map[9] == Side::right);
    CHECK(p.orientation_map[10] == Side::rear);
    CHECK(p.orientation_map[13] == Side::rear);
    CHECK(p.orientation_map[0] == Side::left);
    CHECK(p.orientation_map[14] == Side::left);

    const PlatformProfile r = pioneer_real_profile();
    CHECK(r.zeta == 0.750);
    CHECK(r.obstacle_threshold == 0.30);
}

TEST_CASE("profiles load from key-value config files") {
    std::istringstream in(
        "[platform]\n"
        "name = tiny\n"
        "wheel_radius = 0.02\n"
        "axle_length = 0.05\n"
        "body_radius = 0.04\n"
        "sensor_modality = sonar_linear\n"
        "sensor_count = 2\n"
        "sensor_angles = 0.5, -0.5\n"
        "orientation_map = left, right\n"
        "obstacle_threshold = 0.2\n"
        "collision_threshold = 0.05\n"
        "zeta = 1.2\n"
        "steering_interface = velocity_yaw\n"
        "sensor_min = 0.1\n"
        "sensor_max = 4.0\n");
    const PlatformProfile p = load_profile(in);
    CHECK(p.name == "tiny");
    CHECK(p.sensor_count == 2);
    CHECK(p.sensor_angles[1] == doctest::Approx(-0.5));
    CHECK(p.orientation_map[1] == Side::right);
    CHECK(p.zeta == 1.2);
}

TEST_CASE("profile validation rejects inconsistent threshold ordering") {
    PlatformProfile p = pioneer_sim_profile();
    p.collision_threshold = 0.5;  // sonar collision must be below obstacle
    CHECK_THROWS(validate_profile(p));
}
