#include "aisim/perception.hpp"
#include "doctest.h"

using namespace aisim;

namespace {

SensorFrame frame_of(std::vector<double> d) {
    SensorFrame f;
    f.distances = std::move(d);
    return f;
}

}  // namespace

TEST_CASE("classification on the infrared platform") {
    const PlatformProfile e = epuck_profile();
    std::vector<double> quiet(8, 10.0);

    SUBCASE("nothing near, no blob: target unseen") {
        CHECK(classify(frame_of(quiet), e) == 1);
    }

    SUBCASE("nothing near but a blob: target seen") {
        SensorFrame f = frame_of(quiet);
        f.blob = Blob{BlobDir::centre, 0.1};
        CHECK(classify(f, e) == 2);
    }

    SUBCASE("obstacle antigens follow the salient sensor's side") {
        for (int i = 0; i < 8; ++i) {
            std::vector<double> d = quiet;
            d[i] = 300.0;  // above I1 = 250, below I2 = 2400
            const int expected = 3 + static_cast<int>(e.orientation_map[i]);
            CHECK(classify(frame_of(d), e) == expected);
        }
    }

    SUBCASE("collision outranks obstacle and target") {
        std::vector<double> d = quiet;
        d[2] = 3000.0;  // right-side sensor past I2
        d[6] = 400.0;   // left-side obstacle at the same time
        SensorFrame f = frame_of(d);
        f.blob = Blob{BlobDir::centre, 0.1};
        CHECK(classify(f, e) == 6 + static_cast<int>(e.orientation_map[2]));
    }

    SUBCASE("ties break towards the lowest index") {
        std::vector<double> d = quiet;
        d[1] = 500.0;
        d[5] = 500.0;
        CHECK(classify(frame_of(d), e) == 3 + static_cast<int>(e.orientation_map[1]));
    }
}

TEST_CASE("classification on the sonar platform uses minimum distance") {
    const PlatformProfile p = pioneer_sim_profile();
    std::vector<double> quiet(16, 5.0);

    CHECK(classify(frame_of(quiet), p) == 1);

    SUBCASE("close sonar on each side") {
        for (int i = 0; i < 16; ++i) {
            std::vector<double> d = quiet;
            d[i] = 0.10;  // below I1 = 0.15, above I2 = 0.04
            const int expected = 3 + static_cast<int>(p.orientation_map[i]);
            CHECK(classify(frame_of(d), p) == expected);
        }
    }

    SUBCASE("a touching sonar reads as collision") {
        std::vector<double> d = quiet;
        d[7] = 0.03;  // below I2
        CHECK(classify(frame_of(d), p) == 6 + static_cast<int>(p.orientation_map[7]));
    }

    SUBCASE("blob is ignored while an obstacle is present") {
        std::vector<double> d = quiet;
        d[0] = 0.10;
        SensorFrame f = frame_of(d);
        f.blob = Blob{BlobDir::left, 0.2};
        CHECK(classify(f, p) == 3 + static_cast<int>(p.orientation_map[0]));
    }
}

TEST_CASE("danger levels order the antigen codes") {
    CHECK(danger_level(1) == 0);
    CHECK(danger_level(2) == 0);
    for (int a = 3; a <= 5; ++a) CHECK(danger_level(a) == 1);
    for (int a = 6; a <= 8; ++a) CHECK(danger_level(a) == 2);
}

TEST_CASE("blob_direction reports none without a blob") {
    SensorFrame f;
    CHECK(blob_direction(f) == BlobDir::none);
    f.blob = Blob{BlobDir::right, 0.1};
    CHECK(blob_direction(f) == BlobDir::right);
}
