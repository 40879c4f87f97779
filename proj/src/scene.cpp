// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/scene.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "emtrace/errors.hpp"

namespace emtrace {

namespace {

Aabb huge_box() {
    Aabb b;
    b.expand({-1e9, -1e9, -1e9});
    b.expand({1e9, 1e9, 1e9});
    return b;
}

bool iequals_prefix(std::string_view name, std::string_view prefix) {
    if (prefix.size() > name.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(name[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    }
    return true;
}

}  // namespace

Scene::Scene(std::vector<Material> materials, std::vector<SceneObject> objects, double frequency_hz)
    : materials_(std::move(materials)), objects_(std::move(objects)), frequency_hz_(frequency_hz) {
    if (!(frequency_hz_ > 0.0)) throw std::invalid_argument("scene frequency must be > 0");
    for (const Material& m : materials_) m.validate();
    for (const SceneObject& obj : objects_) {
        if (obj.name.empty()) throw SemanticError("scene object with empty name");
        if (obj.material_index < 0 || obj.material_index >= static_cast<int>(materials_.size()))
            throw SemanticError("object '" + obj.name + "' has no resolved material");
        for (const Triangle& t : obj.triangles) {
            if (!(t.area() > kMinTriangleArea))
                throw SemanticError("object '" + obj.name + "' contains a degenerate triangle");
            bounds_.expand(t.a);
            bounds_.expand(t.b);
            bounds_.expand(t.c);
        }
    }
    if (!bounds_.valid()) {
        bounds_ = huge_box();
        padded_bounds_ = bounds_;
        return;
    }
    const double pad = std::max(10.0, 0.1 * bounds_.diagonal());
    padded_bounds_ = bounds_;
    padded_bounds_.lo -= Vec3{pad, pad, pad};
    padded_bounds_.hi += Vec3{pad, pad, pad};
}

int Scene::material_index(std::string_view name) const {
    for (size_t i = 0; i < materials_.size(); ++i)
        if (materials_[i].name == name) return static_cast<int>(i);
    return -1;
}

size_t Scene::triangle_count() const {
    size_t n = 0;
    for (const SceneObject& o : objects_) n += o.triangles.size();
    return n;
}

Scene assign_materials_by_name(const Scene& scene, const std::map<std::string, std::string>& rules) {
    std::vector<std::string> unmatched;
    std::vector<std::string> ambiguous;
    std::vector<SceneObject> objects = scene.objects();

    for (SceneObject& obj : objects) {
        size_t best_len = 0;
        int matches_at_best = 0;
        const std::string* target = nullptr;
        for (const auto& [prefix, material_name] : rules) {
            if (!iequals_prefix(obj.name, prefix)) continue;
            if (prefix.size() > best_len) {
                best_len = prefix.size();
                matches_at_best = 1;
                target = &material_name;
            } else if (prefix.size() == best_len) {
                ++matches_at_best;
            }
        }
        if (target == nullptr) {
            unmatched.push_back(obj.name);
            continue;
        }
        if (matches_at_best > 1) {
            ambiguous.push_back(obj.name);
            continue;
        }
        const int idx = scene.material_index(*target);
        if (idx < 0) throw SemanticError("rule target material '" + *target + "' is not defined in the scene");
        obj.material_index = idx;
    }

    auto join = [](const std::vector<std::string>& names) {
        std::string out;
        for (const std::string& n : names) {
            if (!out.empty()) out += ", ";
            out += n;
        }
        return out;
    };
    if (!unmatched.empty())
        throw SemanticError("objects match no material rule: " + join(unmatched));
    if (!ambiguous.empty())
        throw SemanticError("objects match multiple rules of equal prefix length: " + join(ambiguous));

    return Scene(scene.materials(), std::move(objects), scene.frequency_hz());
}

}  // namespace emtrace
