// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <span>
#include <vector>

#include "emtrace/vec3.hpp"

namespace emtrace {

/// Row-major 3x3 matrix.
struct Mat3 {
    double m[3][3]{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    static Mat3 identity() { return {}; }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m[0][0] = c0.x; r.m[0][1] = c1.x; r.m[0][2] = c2.x;
        r.m[1][0] = c0.y; r.m[1][1] = c1.y; r.m[1][2] = c2.y;
        r.m[2][0] = c0.z; r.m[2][1] = c1.z; r.m[2][2] = c2.z;
        return r;
    }

    static Mat3 rotation_z(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        Mat3 r;
        r.m[0][0] = c; r.m[0][1] = -s; r.m[0][2] = 0;
        r.m[1][0] = s; r.m[1][1] = c;  r.m[1][2] = 0;
        r.m[2][0] = 0; r.m[2][1] = 0;  r.m[2][2] = 1;
        return r;
    }

    static Mat3 rotation_y(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        Mat3 r;
        r.m[0][0] = c;  r.m[0][1] = 0; r.m[0][2] = s;
        r.m[1][0] = 0;  r.m[1][1] = 1; r.m[1][2] = 0;
        r.m[2][0] = -s; r.m[2][1] = 0; r.m[2][2] = c;
        return r;
    }

    static Mat3 rotation_x(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        Mat3 r;
        r.m[0][0] = 1; r.m[0][1] = 0; r.m[0][2] = 0;
        r.m[1][0] = 0; r.m[1][1] = c; r.m[1][2] = -s;
        r.m[2][0] = 0; r.m[2][1] = s; r.m[2][2] = c;
        return r;
    }

    Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = 0.0;
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
            }
        return r;
    }

    double determinant() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    Vec3 column(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
};

/// Rigid transform from a local frame into the global frame: p_global = R p_local + t.
struct Pose {
    Mat3 rotation;
    Vec3 translation;

    /// Proper orthonormal rotation within `tol` (R^T R = I and det R = +1).
    bool is_valid(double tol = 1e-9) const {
        const Mat3 rtr = rotation.transposed() * rotation;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double expect = (i == j) ? 1.0 : 0.0;
                if (std::abs(rtr.m[i][j] - expect) > tol) return false;
            }
        return std::abs(rotation.determinant() - 1.0) <= tol;
    }
};

/// Maps local-frame points to the global frame. Throws std::invalid_argument
/// when the pose rotation is not a proper orthonormal matrix.
std::vector<Vec3> transform_points(std::span<const Vec3> points, const Pose& pose);

}  // namespace emtrace
