// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "emtrace/scene.hpp"
#include "emtrace/vec3.hpp"

namespace emtrace {

/// Moeller-Trumbore. Returns the ray parameter t (distance for unit
/// directions) of the intersection with t in (t_min, t_max), or nothing.
std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Triangle& tri,
                                         double t_min, double t_max);

struct HitRecord {
    double t{0.0};
    int triangle_index{-1};  // index into Bvh::triangles()
    int object_index{-1};
    Vec3 point;
    Vec3 normal;  // unit, oriented against the incident direction
};

/// Binned-SAH bounding volume hierarchy over the scene triangles. A
/// default-constructed Bvh is empty and queryable (every query misses),
/// which is how geometry-free scenes are traced.
class Bvh {
  public:
    struct TriangleRef {
        Triangle tri;
        int object_index;
    };

    Bvh() = default;

    /// Throws std::invalid_argument when the scene holds no triangles.
    static Bvh build(const Scene& scene);

    /// Nearest intersection with t in (t_min, t_max). Ties on t resolve to
    /// the lowest triangle index so results match an exhaustive scan.
    std::optional<HitRecord> nearest_hit(const Vec3& origin, const Vec3& dir, double t_min,
                                         double t_max = std::numeric_limits<double>::infinity()) const;

    /// True when any triangle intersects the open segment (t_min, t_max).
    bool occluded(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const;

    std::span<const TriangleRef> triangles() const { return triangles_; }
    size_t node_count() const { return nodes_.size(); }
    size_t leaf_count() const;
    bool empty() const { return triangles_.empty(); }

    /// Structural invariants: every triangle referenced exactly once and
    /// every node box containing its children. Used by tests.
    bool check_invariants() const;

  private:
    struct Node {
        Aabb box;
        int left{-1};   // internal: child index; leaf: first triangle
        int count{0};   // leaf: number of triangles; internal: 0
        int right{-1};  // internal only
        bool is_leaf() const { return count > 0; }
    };

    std::vector<TriangleRef> triangles_;
    std::vector<Node> nodes_;

    int build_node(std::vector<int>& order, int begin, int end,
                   const std::vector<Aabb>& boxes, const std::vector<Vec3>& centroids);
};

}  // namespace emtrace
