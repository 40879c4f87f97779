// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/bvh.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace emtrace {

namespace {
constexpr int kMaxLeafSize = 4;
constexpr int kSahBins = 16;
}  // namespace

std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Triangle& tri,
                                         double t_min, double t_max) {
    const Vec3 e1 = tri.b - tri.a;
    const Vec3 e2 = tri.c - tri.a;
    const Vec3 p = cross(dir, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < 1e-14) return std::nullopt;  // parallel
    const double inv_det = 1.0 / det;
    const Vec3 s = origin - tri.a;
    const double u = dot(s, p) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 q = cross(s, e1);
    const double v = dot(dir, q) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = dot(e2, q) * inv_det;
    if (t <= t_min || t >= t_max) return std::nullopt;
    return t;
}

Bvh Bvh::build(const Scene& scene) {
    Bvh bvh;
    for (size_t oi = 0; oi < scene.objects().size(); ++oi)
        for (const Triangle& t : scene.objects()[oi].triangles)
            bvh.triangles_.push_back({t, static_cast<int>(oi)});
    if (bvh.triangles_.empty()) throw std::invalid_argument("cannot build a BVH over an empty scene");

    const size_t n = bvh.triangles_.size();
    std::vector<Aabb> boxes(n);
    std::vector<Vec3> centroids(n);
    for (size_t i = 0; i < n; ++i) {
        boxes[i].expand(bvh.triangles_[i].tri.a);
        boxes[i].expand(bvh.triangles_[i].tri.b);
        boxes[i].expand(bvh.triangles_[i].tri.c);
        centroids[i] = boxes[i].center();
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    bvh.nodes_.reserve(2 * n);
    bvh.build_node(order, 0, static_cast<int>(n), boxes, centroids);

    // store triangles in traversal order so leaves reference contiguous runs
    std::vector<TriangleRef> reordered(n);
    for (size_t i = 0; i < n; ++i) reordered[i] = bvh.triangles_[static_cast<size_t>(order[i])];
    bvh.triangles_ = std::move(reordered);
    return bvh;
}

int Bvh::build_node(std::vector<int>& order, int begin, int end, const std::vector<Aabb>& boxes,
                    const std::vector<Vec3>& centroids) {
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Aabb box;
    Aabb centroid_box;
    for (int i = begin; i < end; ++i) {
        box.expand(boxes[static_cast<size_t>(order[static_cast<size_t>(i)])]);
        centroid_box.expand(centroids[static_cast<size_t>(order[static_cast<size_t>(i)])]);
    }
    nodes_[static_cast<size_t>(node_index)].box = box;

    const int count = end - begin;
    if (count <= kMaxLeafSize) {
        nodes_[static_cast<size_t>(node_index)].left = begin;
        nodes_[static_cast<size_t>(node_index)].count = count;
        return node_index;
    }

    // binned SAH over the widest centroid axis
    const Vec3 ext = centroid_box.extent();
    int axis = 0;
    if (ext.y > ext.x) axis = 1;
    if (ext.z > ext[axis]) axis = 2;
    const double axis_lo = centroid_box.lo[axis];
    const double axis_len = ext[axis];

    int split = -1;
    if (axis_len > 1e-12) {
        struct Bin {
            Aabb box;
            int count{0};
        };
        Bin bins[kSahBins];
        auto bin_of = [&](int tri) {
            const double rel = (centroids[static_cast<size_t>(tri)][axis] - axis_lo) / axis_len;
            return std::min(kSahBins - 1, static_cast<int>(rel * kSahBins));
        };
        for (int i = begin; i < end; ++i) {
            const int b = bin_of(order[static_cast<size_t>(i)]);
            bins[b].box.expand(boxes[static_cast<size_t>(order[static_cast<size_t>(i)])]);
            ++bins[b].count;
        }
        double right_area[kSahBins];
        Aabb sweep;
        int right_count = 0;
        for (int b = kSahBins - 1; b > 0; --b) {
            if (bins[b].count > 0) sweep.expand(bins[b].box);
            right_count += bins[b].count;
            right_area[b] = right_count > 0 ? sweep.surface_area() : 0.0;
        }
        Aabb left_box;
        int left_count = 0;
        double best_cost = std::numeric_limits<double>::infinity();
        int best_bin = -1;
        for (int b = 0; b < kSahBins - 1; ++b) {
            if (bins[b].count > 0) left_box.expand(bins[b].box);
            left_count += bins[b].count;
            const int rc = count - left_count;
            if (left_count == 0 || rc == 0) continue;
            const double cost = left_count * left_box.surface_area() + rc * right_area[b + 1];
            if (cost < best_cost) {
                best_cost = cost;
                best_bin = b;
            }
        }
        if (best_bin >= 0) {
            auto mid = std::stable_partition(order.begin() + begin, order.begin() + end,
                                             [&](int tri) { return bin_of(tri) <= best_bin; });
            split = static_cast<int>(mid - order.begin());
        }
    }
    if (split <= begin || split >= end) {
        // degenerate centroid spread: median split keeps the tree balanced
        const int mid = begin + count / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                         [&](int a, int b) {
                             return centroids[static_cast<size_t>(a)][axis] < centroids[static_cast<size_t>(b)][axis];
                         });
        split = mid;
    }

    const int left = build_node(order, begin, split, boxes, centroids);
    const int right = build_node(order, split, end, boxes, centroids);
    nodes_[static_cast<size_t>(node_index)].left = left;
    nodes_[static_cast<size_t>(node_index)].right = right;
    nodes_[static_cast<size_t>(node_index)].count = 0;
    return node_index;
}

std::optional<HitRecord> Bvh::nearest_hit(const Vec3& origin, const Vec3& dir, double t_min,
                                          double t_max) const {
    if (nodes_.empty()) return std::nullopt;
    const Vec3 inv_dir{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};

    int best_tri = -1;
    double best_t = t_max;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[static_cast<size_t>(stack[--top])];
        if (!node.box.hit(origin, inv_dir, t_min, best_t)) continue;
        if (node.is_leaf()) {
            for (int i = node.left; i < node.left + node.count; ++i) {
                const auto t = intersect_triangle(origin, dir, triangles_[static_cast<size_t>(i)].tri, t_min, best_t);
                if (t && (*t < best_t || (*t == best_t && i < best_tri))) {
                    best_t = *t;
                    best_tri = i;
                }
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    if (best_tri < 0) return std::nullopt;

    HitRecord hit;
    hit.t = best_t;
    hit.triangle_index = best_tri;
    hit.object_index = triangles_[static_cast<size_t>(best_tri)].object_index;
    hit.point = origin + dir * best_t;
    Vec3 n = triangles_[static_cast<size_t>(best_tri)].tri.geometric_normal();
    if (dot(n, dir) > 0.0) n = -n;
    hit.normal = n;
    return hit;
}

bool Bvh::occluded(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const {
    return nearest_hit(origin, dir, t_min, t_max).has_value();
}

size_t Bvh::leaf_count() const {
    size_t n = 0;
    for (const Node& node : nodes_)
        if (node.is_leaf()) ++n;
    return n;
}

bool Bvh::check_invariants() const {
    if (nodes_.empty()) return triangles_.empty();
    std::vector<int> seen(triangles_.size(), 0);
    for (size_t ni = 0; ni < nodes_.size(); ++ni) {
        const Node& node = nodes_[ni];
        if (node.is_leaf()) {
            for (int i = node.left; i < node.left + node.count; ++i) {
                if (i < 0 || i >= static_cast<int>(triangles_.size())) return false;
                ++seen[static_cast<size_t>(i)];
                const Triangle& t = triangles_[static_cast<size_t>(i)].tri;
                for (const Vec3& v : {t.a, t.b, t.c})
                    if (!node.box.contains(v)) return false;
            }
        } else {
            for (int child : {node.left, node.right}) {
                if (child < 0 || child >= static_cast<int>(nodes_.size())) return false;
                const Aabb& cb = nodes_[static_cast<size_t>(child)].box;
                if (!node.box.contains(cb.lo) || !node.box.contains(cb.hi)) return false;
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

}  // namespace emtrace
