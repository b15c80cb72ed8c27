#include <doctest.h>

#include <random>

#include "mrpost/geometry.hpp"
#include "oracles.hpp"

using namespace mrpost;

TEST_CASE("point-segment distance basics") {
    CHECK(point_segment_dist_sq({0, 0}, {0, 0}, {0, 0}) == doctest::Approx(0.0));
    CHECK(point_segment_dist_sq({1, 1}, {0, 0}, {2, 0}) == doctest::Approx(1.0));
    CHECK(point_segment_dist_sq({-1, 0}, {0, 0}, {2, 0}) == doctest::Approx(1.0));
    CHECK(point_segment_dist_sq({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(25.0));
}

TEST_CASE("segment-segment distance: crossing, parallel, degenerate") {
    // crossing segments touch
    CHECK(segment_segment_dist_sq({-1, 0}, {1, 0}, {0, -1}, {0, 1}) == doctest::Approx(0.0));
    // parallel horizontal segments one apart
    CHECK(segment_segment_dist_sq({0, 0}, {1, 0}, {0, 1}, {1, 1}) == doctest::Approx(1.0));
    // both degenerate
    CHECK(segment_segment_dist_sq({0, 0}, {0, 0}, {3, 4}, {3, 4}) == doctest::Approx(25.0));
    // endpoint-to-endpoint closest
    CHECK(segment_segment_dist_sq({0, 0}, {1, 0}, {2, 0}, {3, 0}) == doctest::Approx(1.0));
}

TEST_CASE("segment-segment distance agrees with dense sampling on random pairs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Capsule a{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, 0.0};
        const Capsule b{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, 0.0};
        const double exact = std::sqrt(segment_segment_dist_sq(a.a, a.b, b.a, b.b));
        const double sampled = oracles::dense_axis_distance(a, b);
        CHECK(sampled >= exact - 1e-12);
        CHECK(sampled <= exact + 1e-3);
    }
}

TEST_CASE("capsule overlap is strict: touching is not a collision") {
    const Capsule a{{0, 0}, {0, 0}, 0.1};
    const Capsule b{{0.2, 0}, {0.2, 0}, 0.1};
    CHECK_FALSE(capsules_overlap(a, b));
    const Capsule c{{0.199, 0}, {0.199, 0}, 0.1};
    CHECK(capsules_overlap(a, c));
}

TEST_CASE("segment-rect distance") {
    const Rect r{{-1, -1}, {1, 1}};
    CHECK(segment_rect_dist({0, 0}, {0.5, 0.5}, r) == doctest::Approx(0.0));  // inside
    CHECK(segment_rect_dist({-2, 0}, {2, 0}, r) == doctest::Approx(0.0));    // piercing
    CHECK(segment_rect_dist({-2, 2}, {2, 2}, r) == doctest::Approx(1.0));    // above
    CHECK(segment_rect_dist({2, 2}, {3, 2}, r) == doctest::Approx(std::sqrt(2.0)));  // corner
}
