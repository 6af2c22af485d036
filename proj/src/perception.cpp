#include "aisim/perception.hpp"

namespace aisim {

int classify(const SensorFrame& frame, const PlatformProfile& profile) {
    // Salient sensor: max reading for infrared (higher = closer), min for sonar.
    // Ties break towards the lowest index so replays are deterministic.
    int salient = 0;
    double value = frame.distances.empty() ? 0.0 : frame.distances[0];
    for (int i = 1; i < static_cast<int>(frame.distances.size()); ++i) {
        const double v = frame.distances[i];
        const bool closer = profile.modality == SensorModality::infrared_nonlinear ? v > value
                                                                                   : v < value;
        if (closer) {
            salient = i;
            value = v;
        }
    }

    bool collision = false, obstacle = false;
    if (!frame.distances.empty()) {
        if (profile.modality == SensorModality::infrared_nonlinear) {
            collision = value >= profile.collision_threshold;
            obstacle = value >= profile.obstacle_threshold;
        } else {
            collision = value <= profile.collision_threshold;
            obstacle = value <= profile.obstacle_threshold;
        }
    }

    if (collision || obstacle) {
        const int side = static_cast<int>(profile.orientation_map[salient]);  // right/rear/left
        return (collision ? 6 : 3) + side;
    }
    return frame.blob ? 2 : 1;
}

BlobDir blob_direction(const SensorFrame& frame) {
    return frame.blob ? frame.blob->dir : BlobDir::none;
}

int danger_level(int antigen) {
    if (antigen >= 6) return 2;
    if (antigen >= 3) return 1;
    return 0;
}

}  // namespace aisim
