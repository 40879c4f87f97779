// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emtrace/material.hpp"
#include "emtrace/vec3.hpp"

namespace emtrace {

struct Triangle {
    Vec3 a, b, c;

    Vec3 geometric_normal() const { return normalized(cross(b - a, c - a)); }
    double area() const { return 0.5 * norm(cross(b - a, c - a)); }
    Vec3 centroid() const { return (a + b + c) / 3.0; }
};

inline constexpr double kMinTriangleArea = 1e-12;  // m^2

struct SceneObject {
    std::string name;
    int material_index{-1};
    std::vector<Triangle> triangles;
    bool is_ris{false};   // flagged objects terminate recursion and re-radiate
    int ris_index{-1};    // index into the RIS panel list when is_ris
};

/// Immutable after construction; safe to share across tracing workers.
class Scene {
  public:
    Scene() = default;
    Scene(std::vector<Material> materials, std::vector<SceneObject> objects, double frequency_hz);

    const std::vector<Material>& materials() const { return materials_; }
    const std::vector<SceneObject>& objects() const { return objects_; }
    double frequency_hz() const { return frequency_hz_; }
    double wavelength() const { return kSpeedOfLight / frequency_hz_; }

    const Material& material_of(const SceneObject& obj) const { return materials_[static_cast<size_t>(obj.material_index)]; }
    int material_index(std::string_view name) const;  // -1 when absent

    size_t triangle_count() const;

    /// Tight AABB over all triangles. Empty scenes get a +-1e9 m box so that
    /// device placement and grid checks stay meaningful without geometry.
    const Aabb& bounds() const { return bounds_; }
    /// Bounds padded by max(10 m, 10% of diagonal); used for containment checks.
    const Aabb& padded_bounds() const { return padded_bounds_; }

  private:
    std::vector<Material> materials_;
    std::vector<SceneObject> objects_;
    double frequency_hz_{1e9};
    Aabb bounds_;
    Aabb padded_bounds_;
};

/// Parses the scene XML dialect. Throws ParseError (with line/column) on
/// malformed documents, SemanticError on schema violations (unknown elements,
/// unresolved materials, degenerate triangles, bad numeric ranges).
Scene parse_scene(std::string_view document);

/// Canonical serialization; parse_scene(serialize_scene(s)) reproduces `s`
/// field for field.
std::string serialize_scene(const Scene& scene);

/// Longest-prefix, case-insensitive material assignment keyed on object
/// names. Every rule value must name a material known to the scene. Throws
/// SemanticError listing offenders when an object matches no rule, or when
/// two distinct rules of equal prefix length match the same name.
Scene assign_materials_by_name(const Scene& scene, const std::map<std::string, std::string>& rules);

}  // namespace emtrace
