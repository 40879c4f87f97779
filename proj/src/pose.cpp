// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/pose.hpp"

#include <stdexcept>

namespace emtrace {

std::vector<Vec3> transform_points(std::span<const Vec3> points, const Pose& pose) {
    if (!pose.is_valid()) throw std::invalid_argument("pose rotation is not a proper orthonormal matrix");
    std::vector<Vec3> out;
    out.reserve(points.size());
    for (const Vec3& p : points) out.push_back(pose.rotation.apply(p) + pose.translation);
    return out;
}

}  // namespace emtrace
