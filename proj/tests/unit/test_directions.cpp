// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emtrace/directions.hpp"

using namespace emtrace;

TEST_CASE("fibonacci closed forms for one and two rays") {
    const auto one = fibonacci_directions(1);
    REQUIRE(one.size() == 1);
    // theta = arccos(0) = pi/2, phi = 0
    CHECK(one[0].x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one[0].y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(one[0].z == doctest::Approx(0.0).epsilon(1e-15));

    const auto two = fibonacci_directions(2);
    REQUIRE(two.size() == 2);
    CHECK(std::acos(two[0].z) == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-12));
    CHECK(std::acos(two[1].z) == doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-12));
}

TEST_CASE("fibonacci directions are unit and deterministic") {
    const auto a = fibonacci_directions(1000);
    const auto b = fibonacci_directions(1000);
    REQUIRE(a.size() == 1000);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(norm(a[i]) - 1.0) < 1e-12);
        CHECK(a[i] == b[i]);
    }
}

TEST_CASE("fibonacci hemisphere balance and centroid at ten thousand rays") {
    const auto dirs = fibonacci_directions(10000);
    int upper = 0;
    Vec3 mean;
    for (const Vec3& d : dirs) {
        if (d.z > 0.0) ++upper;
        mean += d;
    }
    mean = mean / 10000.0;
    CHECK(std::abs(upper - 5000) <= 1);
    CHECK(norm(mean) < 0.02);
}

TEST_CASE("fibonacci rejects a zero count") {
    CHECK_THROWS_AS(fibonacci_directions(0), std::invalid_argument);
}

TEST_CASE("biased directions with zero fraction reproduce the plain lattice") {
    const auto plain = fibonacci_directions(500);
    const auto biased = biased_directions(500, 1.0, 2.0, 0.0);
    REQUIRE(plain.size() == biased.size());
    for (size_t i = 0; i < plain.size(); ++i) CHECK(plain[i] == biased[i]);
}

TEST_CASE("biased directions with full fraction stay inside the band") {
    const auto dirs = biased_directions(400, std::numbers::pi / 2.0, std::numbers::pi, 1.0);
    REQUIRE(dirs.size() == 400);
    for (const Vec3& d : dirs) CHECK(d.z <= 1e-12);
}

TEST_CASE("biased directions put the requested share in the band") {
    const double lo = std::numbers::pi / 3.0, hi = 2.0 * std::numbers::pi / 3.0;
    const auto dirs = biased_directions(1000, lo, hi, 0.5);
    int in_band = 0;
    for (const Vec3& d : dirs) {
        const double theta = std::acos(std::clamp(d.z, -1.0, 1.0));
        if (theta >= lo && theta <= hi) ++in_band;
    }
    CHECK(in_band >= 500);
}

TEST_CASE("biased directions reject an empty band") {
    CHECK_THROWS_AS(biased_directions(10, 2.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(biased_directions(10, 0.5, 0.5, 0.5), std::invalid_argument);
}
