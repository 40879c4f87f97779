// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "emtrace/directions.hpp"
#include "emtrace/errors.hpp"

namespace emtrace {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Vec3 to_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw SemanticError("config field '" + what + "' must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Terminal parse_terminal(const json& j, bool is_tx) {
    Terminal t;
    t.id = j.at("id").get<std::string>();
    t.position = to_vec3(j.at("position"), "position");
    if (j.contains("power_dbm")) t.tx_power_w = dbm_to_watts(j.at("power_dbm").get<double>());
    else if (is_tx) t.tx_power_w = dbm_to_watts(30.0);
    t.heading = j.value("heading_deg", 0.0) * kDegToRad;
    t.tilt = j.value("tilt_deg", 0.0) * kDegToRad;
    if (j.contains("velocity")) t.velocity = to_vec3(j.at("velocity"), "velocity");
    if (j.contains("array")) {
        const json& a = j.at("array");
        t.array.rows = a.value("rows", 1);
        t.array.cols = a.value("cols", 1);
        t.array.spacing_v = a.value("spacing_v_m", 0.05);
        t.array.spacing_h = a.value("spacing_h_m", 0.05);
    }
    t.array.orientation = Mat3::rotation_z(t.heading) * Mat3::rotation_y(t.tilt);
    const std::string pol = j.value("polarization", "V");
    if (pol == "V") t.polarization = Polarization::vertical;
    else if (pol == "H") t.polarization = Polarization::horizontal;
    else throw SemanticError("terminal '" + t.id + "': polarization must be V or H");
    return t;
}

}  // namespace

SimulationConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw SemanticError("cannot open config file: " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 1, 1);
    }

    SimulationConfig cfg;
    cfg.raw_json = text;
    cfg.config_dir = file.has_parent_path() ? file.parent_path() : fs::path(".");

    cfg.scene_path = j.at("scene").get<std::string>();
    const fs::path scene_file = cfg.config_dir / cfg.scene_path;
    std::ifstream scene_in(scene_file);
    if (!scene_in) throw SemanticError("scene file not found: " + scene_file.string());
    cfg.scene_xml.assign((std::istreambuf_iterator<char>(scene_in)), std::istreambuf_iterator<char>());

    if (j.contains("materials_file")) {
        const fs::path mats_path = cfg.config_dir / j.at("materials_file").get<std::string>();
        std::ifstream mats_in(mats_path);
        if (!mats_in) throw SemanticError("materials file not found: " + mats_path.string());
        json mats = json::parse(mats_in);
        for (const json& m : mats.at("materials")) {
            Material mat;
            mat.name = m.at("name").get<std::string>();
            mat.relative_permittivity = m.at("relative_permittivity").get<double>();
            mat.conductivity = m.at("conductivity").get<double>();
            mat.relative_permeability = m.value("relative_permeability", 1.0);
            mat.scattering_fraction = m.value("scattering_fraction", 0.0);
            mat.validate();
            cfg.extra_materials.push_back(std::move(mat));
        }
    }

    if (j.contains("material_rules"))
        for (const auto& [key, value] : j.at("material_rules").items())
            cfg.material_rules[key] = value.get<std::string>();

    for (const json& t : j.value("transmitters", json::array())) cfg.transmitters.push_back(parse_terminal(t, true));
    for (const json& r : j.value("receivers", json::array())) cfg.receivers.push_back(parse_terminal(r, false));

    int ris_counter = 0;
    for (const json& rj : j.value("ris", json::array())) {
        RisConfig rc;
        rc.panel.id = rj.value("id", "ris" + std::to_string(ris_counter));
        rc.panel.center = to_vec3(rj.at("center"), "ris center");
        const Vec3 n = normalized(to_vec3(rj.at("normal"), "ris normal"));
        Vec3 x = rj.contains("x_axis") ? to_vec3(rj.at("x_axis"), "ris x_axis") : any_orthonormal(n);
        x = normalized(x - n * dot(x, n));
        const Vec3 y = cross(n, x);
        rc.panel.frame = Mat3::from_columns(x, y, n);
        rc.panel.rows = rj.value("rows", 1);
        rc.panel.cols = rj.value("cols", 1);
        rc.panel.pitch = rj.at("pitch_m").get<double>();
        rc.mode = rj.value("mode", "single_beam");
        if (rc.mode == "single_beam") {
            const json& tgt = rj.at("target_deg");
            rc.targets.push_back({tgt[0].get<double>() * kDegToRad, tgt[1].get<double>() * kDegToRad, 1.0, -1.0});
        } else if (rc.mode == "multi_beam") {
            const json& tgts = rj.at("targets_deg");
            const json weights = rj.value("weights", json::array());
            for (size_t i = 0; i < tgts.size(); ++i) {
                RisBeamTarget t{tgts[i][0].get<double>() * kDegToRad, tgts[i][1].get<double>() * kDegToRad,
                                1.0, -1.0};
                if (i < weights.size()) t.weight = weights[i].get<double>();
                rc.targets.push_back(t);
            }
            rc.iterations = rj.value("iterations", 200);
            rc.step_size = rj.value("step_size", 1e-3);
        } else {
            throw SemanticError("ris '" + rc.panel.id + "': mode must be single_beam or multi_beam");
        }
        cfg.ris.push_back(std::move(rc));
        ++ris_counter;
    }

    if (j.contains("termination")) {
        cfg.policy.max_interactions = j.at("termination").value("max_interactions", 3);
        cfg.policy.min_power_w = j.at("termination").value("min_power_w", 1e-15);
    }
    if (j.contains("launch")) {
        cfg.launch_count = j.at("launch").value("count", 100000);
        if (j.at("launch").contains("bias")) {
            const json& b = j.at("launch").at("bias");
            cfg.bias_fraction = b.value("fraction", 0.0);
            const json band = b.value("band_deg", json::array({0.0, 180.0}));
            cfg.bias_band_lo = band[0].get<double>() * kDegToRad;
            cfg.bias_band_hi = band[1].get<double>() * kDegToRad;
        }
    }
    cfg.capture_radius = j.value("capture_radius_m", 0.5);
    cfg.diffraction = j.value("diffraction", true);
    cfg.bandwidth_hz = j.value("bandwidth_hz", 100e6);
    cfg.cfr_points = j.value("cfr_points", 0);
    cfg.emit_cfr = j.value("emit_cfr", false);

    for (const json& gj : j.value("coverage_grids", json::array())) {
        CoverageConfig cc;
        cc.spec.id = gj.at("id").get<std::string>();
        cc.spec.center = to_vec3(gj.at("center"), "grid center");
        cc.spec.width = gj.at("width_m").get<double>();
        cc.spec.height = gj.at("height_m").get<double>();
        if (gj.contains("normal")) cc.spec.normal = to_vec3(gj.at("normal"), "grid normal");
        cc.spec.in_plane_rotation = gj.value("rotation_deg", 0.0) * kDegToRad;
        cc.spec.resolution = gj.at("resolution_per_m").get<double>();
        cc.palette = gj.value("palette", "jet");
        cc.db_min = gj.value("db_min", -120.0);
        cc.db_max = gj.value("db_max", -40.0);
        cc.launch_count = gj.value("launch_count", 20000);
        cfg.coverage_grids.push_back(std::move(cc));
    }

    if (j.contains("snapshots_s")) {
        cfg.snapshots.clear();
        for (const json& s : j.at("snapshots_s")) cfg.snapshots.push_back(s.get<double>());
        if (cfg.snapshots.empty()) cfg.snapshots.push_back(0.0);
    }
    cfg.seed = j.value("seed", 1);
    cfg.threads = j.value("threads", 0);
    return cfg;
}

std::string SimulationConfig::normalized_json() const {
    json j = json::parse(raw_json);
    j["seed"] = seed;
    j.erase("threads");
    return j.dump(2) + "\n";
}

std::vector<ValidationIssue> validate_config(const SimulationConfig& config) {
    std::vector<ValidationIssue> issues;

    Scene scene;
    bool scene_ok = false;
    try {
        scene = parse_scene(config.scene_xml);
        if (!config.extra_materials.empty()) {
            std::vector<Material> materials = scene.materials();
            for (const Material& m : config.extra_materials)
                if (scene.material_index(m.name) < 0) materials.push_back(m);
            scene = Scene(std::move(materials), scene.objects(), scene.frequency_hz());
        }
        scene_ok = true;
    } catch (const std::exception& e) {
        issues.push_back({"scene_model", e.what()});
    }
    if (scene_ok && !config.material_rules.empty()) {
        try {
            scene = assign_materials_by_name(scene, config.material_rules);
        } catch (const std::exception& e) {
            issues.push_back({"assign_materials", e.what()});
        }
    }

    if (config.policy.max_interactions < 1)
        issues.push_back({"TerminationPolicy", "max_interactions must be >= 1"});
    if (!(config.policy.min_power_w > 0.0))
        issues.push_back({"TerminationPolicy", "min_power must be > 0"});

    if (config.transmitters.empty())
        issues.push_back({"devices", "at least one transmitter is required"});
    for (const Terminal& t : config.transmitters) {
        try {
            t.validate();
            if (scene_ok && !scene.padded_bounds().contains(t.position))
                issues.push_back({"devices", "transmitter '" + t.id + "' lies outside the scene bounds"});
        } catch (const std::exception& e) {
            issues.push_back({"devices", e.what()});
        }
    }
    for (const Terminal& t : config.receivers) {
        try {
            t.validate();
            if (scene_ok && !scene.padded_bounds().contains(t.position))
                issues.push_back({"devices", "receiver '" + t.id + "' lies outside the scene bounds"});
        } catch (const std::exception& e) {
            issues.push_back({"devices", e.what()});
        }
    }
    for (const RisConfig& rc : config.ris) {
        try {
            rc.panel.validate();
            if (rc.targets.empty()) issues.push_back({"devices", "ris '" + rc.panel.id + "' has no target"});
            if (rc.mode == "multi_beam" && rc.iterations < 1)
                issues.push_back({"devices", "ris '" + rc.panel.id + "' iterations must be >= 1"});
        } catch (const std::exception& e) {
            issues.push_back({"devices", e.what()});
        }
    }

    if (config.launch_count < 1) issues.push_back({"ray_engine", "launch count must be >= 1"});
    if (!(config.capture_radius > 0.0)) issues.push_back({"ray_engine", "capture radius must be > 0"});
    if (config.bias_fraction > 0.0 && !(config.bias_band_lo < config.bias_band_hi))
        issues.push_back({"ray_engine", "bias band must be a non-empty interval"});
    if (!(config.bandwidth_hz > 0.0)) issues.push_back({"channel_synthesis", "bandwidth must be > 0"});
    if (config.cfr_points < 0) issues.push_back({"channel_synthesis", "cfr_points must be >= 0"});

    for (const CoverageConfig& cc : config.coverage_grids) {
        try {
            cc.spec.validate();
            if (!(cc.db_min < cc.db_max))
                issues.push_back({"coverage", "grid '" + cc.spec.id + "': db range must satisfy min < max"});
            if (cc.launch_count < 1)
                issues.push_back({"coverage", "grid '" + cc.spec.id + "': launch count must be >= 1"});
        } catch (const std::exception& e) {
            issues.push_back({"coverage", std::string("grid '") + cc.spec.id + "': " + e.what()});
        }
    }

    for (size_t i = 1; i < config.snapshots.size(); ++i)
        if (!(config.snapshots[i] > config.snapshots[i - 1])) {
            issues.push_back({"channel_synthesis", "snapshot times must be strictly increasing"});
            break;
        }
    return issues;
}

PreparedScenario prepare_scenario(const SimulationConfig& config) {
    const auto issues = validate_config(config);
    if (!issues.empty()) {
        std::string msg = "configuration is invalid:";
        for (const ValidationIssue& issue : issues) msg += "\n  [" + issue.module + "] " + issue.message;
        throw SemanticError(msg);
    }

    PreparedScenario prep;
    Scene base = parse_scene(config.scene_xml);
    if (!config.extra_materials.empty()) {
        std::vector<Material> merged = base.materials();
        for (const Material& m : config.extra_materials)
            if (base.material_index(m.name) < 0) merged.push_back(m);
        base = Scene(std::move(merged), base.objects(), base.frequency_hz());
    }
    if (!config.material_rules.empty()) base = assign_materials_by_name(base, config.material_rules);

    // merge RIS panels into the scene as flagged objects
    std::vector<Material> materials = base.materials();
    std::vector<SceneObject> objects = base.objects();
    if (!config.ris.empty()) {
        int panel_material = -1;
        for (size_t i = 0; i < materials.size(); ++i)
            if (materials[i].name == "metal") panel_material = static_cast<int>(i);
        if (panel_material < 0) {
            Material m;
            m.name = "__ris_panel";
            m.relative_permittivity = 1.0;
            m.conductivity = 1e7;
            materials.push_back(m);
            panel_material = static_cast<int>(materials.size()) - 1;
        }
        for (size_t i = 0; i < config.ris.size(); ++i) {
            const RisPanel& p = config.ris[i].panel;
            const double hx = 0.5 * p.cols * p.pitch;
            const double hy = 0.5 * p.rows * p.pitch;
            const Vec3 c00 = p.center + p.frame.apply({-hx, -hy, 0.0});
            const Vec3 c10 = p.center + p.frame.apply({hx, -hy, 0.0});
            const Vec3 c11 = p.center + p.frame.apply({hx, hy, 0.0});
            const Vec3 c01 = p.center + p.frame.apply({-hx, hy, 0.0});
            SceneObject obj;
            obj.name = p.id;
            obj.material_index = panel_material;
            obj.triangles = {{c00, c10, c11}, {c00, c11, c01}};
            obj.is_ris = true;
            obj.ris_index = static_cast<int>(i);
            objects.push_back(std::move(obj));
        }
    }
    prep.scene = Scene(std::move(materials), std::move(objects), base.frequency_hz());
    prep.bvh = prep.scene.triangle_count() > 0 ? Bvh::build(prep.scene) : Bvh{};

    const double wavelength = prep.scene.wavelength();
    for (const RisConfig& rc : config.ris) {
        RisPanel panel = rc.panel;
        if (rc.mode == "single_beam") {
            panel.phase_profile =
                ris_single_beam_profile(panel, rc.targets[0].theta, rc.targets[0].phi, wavelength);
        } else {
            panel.phase_profile =
                ris_multibeam_optimize(panel, rc.targets, wavelength, rc.iterations, rc.step_size,
                                       config.seed)
                    .phases;
        }
        prep.panels.push_back(std::move(panel));
    }

    prep.transmitters = config.transmitters;
    prep.receivers = config.receivers;
    prep.options.policy = config.policy;
    prep.options.capture_radius = config.capture_radius;
    prep.options.enable_diffraction = config.diffraction;
    prep.options.threads = config.threads;
    prep.launch = config.bias_fraction > 0.0
                      ? biased_directions(config.launch_count, config.bias_band_lo, config.bias_band_hi,
                                          config.bias_fraction)
                      : fibonacci_directions(config.launch_count);
    return prep;
}

}  // namespace emtrace
