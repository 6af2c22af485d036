#pragma once

#include "aisim/platform.hpp"
#include "aisim/world.hpp"

namespace aisim {

// Antigen codes, 1..8:
//   1 target unseen, 2 target seen,
//   3/4/5 obstacle right/rear/left, 6/7/8 collision right/rear/left.
// Severity first: collision > obstacle > target seen > target unseen.
int classify(const SensorFrame& frame, const PlatformProfile& profile);

BlobDir blob_direction(const SensorFrame& frame);

// Danger level of an antigen code: 2 collision, 1 obstacle, 0 neither.
int danger_level(int antigen);

}  // namespace aisim
