// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/directions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emtrace {

namespace {

const double kGoldenRatio = (1.0 + std::sqrt(5.0)) / 2.0;

Vec3 spherical_to_unit(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

// Fibonacci lattice with cos(theta) uniform over [cos_hi, cos_lo].
void fill_band(std::vector<Vec3>& out, int count, double cos_lo, double cos_hi) {
    for (int k = 0; k < count; ++k) {
        const double c = cos_lo + (cos_hi - cos_lo) * (k + 0.5) / count;
        const double theta = std::acos(c);
        const double phi = 2.0 * std::numbers::pi * k / kGoldenRatio;
        out.push_back(spherical_to_unit(theta, phi));
    }
}

}  // namespace

std::vector<Vec3> fibonacci_directions(int count) {
    if (count < 1) throw std::invalid_argument("direction count must be >= 1");
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(count));
    fill_band(out, count, 1.0, -1.0);
    return out;
}

std::vector<Vec3> biased_directions(int count, double band_lo, double band_hi, double fraction) {
    if (count < 1) throw std::invalid_argument("direction count must be >= 1");
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must be in [0,1]");
    if (!(band_lo >= 0.0 && band_hi <= std::numbers::pi && band_lo < band_hi))
        throw std::invalid_argument("elevation band must be a non-empty sub-interval of [0, pi]");

    const int in_band = static_cast<int>(std::lround(fraction * count));
    const int rest = count - in_band;
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(count));
    if (in_band > 0) fill_band(out, in_band, std::cos(band_lo), std::cos(band_hi));
    if (rest > 0) fill_band(out, rest, 1.0, -1.0);
    return out;
}

}  // namespace emtrace
