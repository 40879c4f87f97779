// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors
//
// Scene builders shared by the unit and acceptance suites.

#pragma once

#include <string>
#include <vector>

#include "emtrace/scene.hpp"

namespace emtrace::test {

inline Material conducting_material(const std::string& name = "pec", double conductivity = 1e7) {
    Material m;
    m.name = name;
    m.relative_permittivity = 1.0;
    m.conductivity = conductivity;
    return m;
}

inline Material dielectric_material(const std::string& name, double permittivity,
                                    double conductivity = 0.0) {
    Material m;
    m.name = name;
    m.relative_permittivity = permittivity;
    m.conductivity = conductivity;
    return m;
}

inline SceneObject rectangle_object(const std::string& name, const Vec3& corner, const Vec3& edge_u,
                                    const Vec3& edge_v, int material_index) {
    SceneObject obj;
    obj.name = name;
    obj.material_index = material_index;
    const Vec3 c00 = corner;
    const Vec3 c10 = corner + edge_u;
    const Vec3 c11 = corner + edge_u + edge_v;
    const Vec3 c01 = corner + edge_v;
    obj.triangles = {{c00, c10, c11}, {c00, c11, c01}};
    return obj;
}

/// Axis-aligned closed room [0,w] x [0,d] x [0,h]; six wall objects in the
/// fixed order x0, x1, y0, y1, floor(z0), ceiling(z1).
inline Scene box_room(double w, double d, double h, const Material& material,
                      double frequency_hz = 3.5e9) {
    std::vector<SceneObject> objects;
    objects.push_back(rectangle_object("wall_x0", {0, 0, 0}, {0, d, 0}, {0, 0, h}, 0));
    objects.push_back(rectangle_object("wall_x1", {w, 0, 0}, {0, d, 0}, {0, 0, h}, 0));
    objects.push_back(rectangle_object("wall_y0", {0, 0, 0}, {w, 0, 0}, {0, 0, h}, 0));
    objects.push_back(rectangle_object("wall_y1", {0, d, 0}, {w, 0, 0}, {0, 0, h}, 0));
    objects.push_back(rectangle_object("floor", {0, 0, 0}, {w, 0, 0}, {0, d, 0}, 0));
    objects.push_back(rectangle_object("ceiling", {0, 0, h}, {w, 0, 0}, {0, d, 0}, 0));
    return Scene({material}, std::move(objects), frequency_hz);
}

/// Large ground rectangle in the z = 0 plane centered on the origin.
inline Scene ground_plane(double half_size, const Material& material, double frequency_hz = 3.5e9) {
    std::vector<SceneObject> objects;
    objects.push_back(rectangle_object("ground", {-half_size, -half_size, 0}, {2 * half_size, 0, 0},
                                       {0, 2 * half_size, 0}, 0));
    return Scene({material}, std::move(objects), frequency_hz);
}

/// Vertical wall rectangle in the x = x0 plane spanning y in [y0,y1], z in [z0,z1].
inline Scene single_wall(double x0, double y0, double y1, double z0, double z1,
                         const Material& material, double frequency_hz = 3.5e9) {
    std::vector<SceneObject> objects;
    objects.push_back(
        rectangle_object("wall", {x0, y0, z0}, {0, y1 - y0, 0}, {0, 0, z1 - z0}, 0));
    return Scene({material}, std::move(objects), frequency_hz);
}

inline Scene empty_scene(double frequency_hz = 3.5e9) { return Scene({}, {}, frequency_hz); }

}  // namespace emtrace::test
