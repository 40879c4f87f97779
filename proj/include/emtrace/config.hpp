// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emtrace/bvh.hpp"
#include "emtrace/coverage.hpp"
#include "emtrace/devices.hpp"
#include "emtrace/scene.hpp"
#include "emtrace/tracer.hpp"

namespace emtrace {

struct RisConfig {
    RisPanel panel;            // geometry; phase profile filled at prepare time
    std::string mode;          // "single_beam" | "multi_beam"
    std::vector<RisBeamTarget> targets;  // radians; single_beam uses targets[0]
    int iterations{200};
    double step_size{1e-3};
};

struct CoverageConfig {
    GridSpec spec;
    std::string palette{"jet"};
    double db_min{-120.0};
    double db_max{-40.0};
    int launch_count{20000};
};

/// Parsed simulation configuration. Angles arrive in degrees and powers in
/// dBm at this boundary only; everything here is already SI/radians.
struct SimulationConfig {
    std::filesystem::path config_dir;
    std::string scene_path;  // as written in the config
    std::string scene_xml;   // loaded document text
    std::vector<Material> extra_materials;  // from materials_file, merged after parsing
    std::map<std::string, std::string> material_rules;

    std::vector<Terminal> transmitters;
    std::vector<Terminal> receivers;
    std::vector<RisConfig> ris;

    TerminationPolicy policy;
    int launch_count{100000};
    double bias_fraction{0.0};
    double bias_band_lo{0.0};  // radians
    double bias_band_hi{0.0};
    double capture_radius{0.5};
    bool diffraction{true};

    double bandwidth_hz{100e6};
    int cfr_points{0};
    bool emit_cfr{false};

    std::vector<CoverageConfig> coverage_grids;
    std::vector<double> snapshots{0.0};
    std::uint64_t seed{1};
    int threads{0};

    /// Effective-config JSON for the package: raw document with the
    /// effective seed applied and the thread count removed (outputs are
    /// thread-count independent).
    std::string normalized_json() const;

    std::string raw_json;  // original document text
};

/// Loads and parses a config document. Throws ParseError / SemanticError on
/// malformed or schema-violating documents; referenced files must exist.
SimulationConfig load_config(const std::filesystem::path& file);

struct ValidationIssue {
    std::string module;
    std::string message;
};

/// Runs every invariant check (scene, materials, devices, policy, grids)
/// and returns the violations; empty means clean.
std::vector<ValidationIssue> validate_config(const SimulationConfig& config);

/// Scene with RIS panel geometry merged in, the BVH, and the resolved
/// phase profiles. Throws on any validation issue.
struct PreparedScenario {
    Scene scene;
    Bvh bvh;
    std::vector<Terminal> transmitters;
    std::vector<Terminal> receivers;
    std::vector<RisPanel> panels;
    TraceOptions options;
    std::vector<Vec3> launch;
};

PreparedScenario prepare_scenario(const SimulationConfig& config);

}  // namespace emtrace
