// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <vector>

#include "emtrace/vec3.hpp"

namespace emtrace {

/// Fibonacci-sphere launch directions: theta_k = arccos(1 - 2(k+0.5)/M),
/// phi_k = 2 pi k / golden_ratio, mapped with z as the polar axis.
/// Deterministic for a fixed count. Throws std::invalid_argument for count 0.
std::vector<Vec3> fibonacci_directions(int count);

/// `fraction` of the directions are Fibonacci-mapped into the polar band
/// [band_lo, band_hi] (radians, measured from +z); the remainder cover the
/// full sphere. fraction 0 reproduces fibonacci_directions exactly.
std::vector<Vec3> biased_directions(int count, double band_lo, double band_hi, double fraction);

}  // namespace emtrace
