// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "emtrace/errors.hpp"
#include "emtrace/pipeline.hpp"
#include "../support/test_scenes.hpp"

using namespace emtrace;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = std::numbers::pi;

#ifndef EMTRACE_SRC_PATH
#define EMTRACE_SRC_PATH "."
#endif

fs::path fixtures_dir() {
    const char* env = std::getenv("EMTRACE_SOURCE_DIR");
    return env != nullptr ? fs::path(env) : fs::path(EMTRACE_SRC_PATH);
}

SimulationConfig shoebox_config() {
    return load_config(fixtures_dir() / "configs" / "shoebox.json");
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("emtrace_pipe_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("bundled shoebox config validates cleanly") {
    const SimulationConfig config = shoebox_config();
    const auto issues = validate_config(config);
    for (const auto& issue : issues) MESSAGE(issue.module, ": ", issue.message);
    CHECK(issues.empty());
}

TEST_CASE("a materials file supplies rule targets missing from the scene XML") {
    const SimulationConfig config =
        load_config(fixtures_dir() / "tests" / "fixtures" / "with_materials_file.json");
    REQUIRE(config.extra_materials.size() == 5);
    CHECK(validate_config(config).empty());
    const PreparedScenario prep = prepare_scenario(config);
    // "wall" objects now carry the metal entry from the data file
    const SceneObject& wall = prep.scene.objects()[0];
    CHECK(prep.scene.material_of(wall).name == "metal");
    CHECK(prep.scene.material_of(wall).conductivity == doctest::Approx(1e7));
}

TEST_CASE("launch bias flows from the config into the prepared launch set") {
    SimulationConfig config = shoebox_config();
    config.launch_count = 1000;
    config.bias_fraction = 1.0;
    config.bias_band_lo = kPi / 2.0;
    config.bias_band_hi = kPi;
    const PreparedScenario prep = prepare_scenario(config);
    REQUIRE(prep.launch.size() == 1000);
    for (const Vec3& d : prep.launch) CHECK(d.z <= 1e-12);  // all in the lower band
}

TEST_CASE("validation names the offending module") {
    SimulationConfig config = shoebox_config();
    config.policy.max_interactions = 0;
    bool found = false;
    for (const auto& issue : validate_config(config))
        if (issue.module == "TerminationPolicy") found = true;
    CHECK(found);

    SimulationConfig bad_rules = shoebox_config();
    bad_rules.material_rules = {{"xyz", "concrete"}};
    found = false;
    for (const auto& issue : validate_config(bad_rules))
        if (issue.module == "assign_materials") found = true;
    CHECK(found);
}

TEST_CASE("time series: static receivers repeat and kinematic phase tracks doppler") {
    SimulationConfig config = shoebox_config();
    config.coverage_grids.clear();
    config.launch_count = 4000;
    config.snapshots = {0.0, 0.001, 0.002};

    SUBCASE("zero velocity gives identical snapshots") {
        config.receivers[0].velocity = {0, 0, 0};
        PreparedScenario prep = prepare_scenario(config);
        const auto links = time_series_channel(prep, config);
        REQUIRE(links.size() == 3);
        REQUIRE(links[0].paths.size() == links[1].paths.size());
        for (size_t i = 0; i < links[0].paths.size(); ++i) {
            CHECK(links[0].paths[i].delay == links[1].paths[i].delay);
            CHECK(links[0].paths[i].gain == links[2].paths[i].gain);
        }
    }

    SUBCASE("snapshot times must strictly increase") {
        PreparedScenario prep = prepare_scenario(config);
        SimulationConfig bad = config;
        bad.snapshots = {0.0, 0.0};
        CHECK_THROWS_AS(time_series_channel(prep, bad), std::invalid_argument);
    }
}

TEST_CASE("LOS phase advance between snapshots matches the reported doppler") {
    // free space, MT receding along +x at 1 m/s
    SimulationConfig config = shoebox_config();
    config.scene_xml = "<scene frequency_hz=\"3.5e9\"></scene>";
    config.material_rules.clear();
    config.coverage_grids.clear();
    config.launch_count = 500;
    config.snapshots = {0.0, 0.001};
    config.transmitters[0].position = {0, 0, 1.5};
    config.transmitters[0].array = {1, 1, 0.04, 0.04, Mat3::identity()};
    config.receivers[0].position = {20.0, 0, 1.5};
    config.receivers[0].velocity = {1.0, 0, 0};
    config.receivers[0].array = {1, 1, 0.04, 0.04, Mat3::identity()};

    PreparedScenario prep = prepare_scenario(config);
    const auto links = time_series_channel(prep, config);
    REQUIRE(links.size() == 2);
    REQUIRE(links[0].paths.size() == 1);
    REQUIRE(links[1].paths.size() == 1);

    const double lambda = prep.scene.wavelength();
    const double expected_phase = -2.0 * kPi * 1e-3 / lambda;  // receding by 1 mm
    double measured = std::arg(links[1].paths[0].gain) - std::arg(links[0].paths[0].gain);
    measured = std::remainder(measured, 2.0 * kPi);
    const double expected_wrapped = std::remainder(expected_phase, 2.0 * kPi);
    CHECK(std::abs(measured - expected_wrapped) < 0.05 * std::abs(expected_wrapped));

    // reported doppler: receding at 1 m/s -> -v/lambda
    CHECK(links[0].paths[0].doppler_hz == doctest::Approx(-1.0 / lambda).epsilon(1e-6));
}

TEST_CASE("a walking receiver loses line of sight behind a blocker") {
    SimulationConfig config = shoebox_config();
    config.material_rules.clear();
    config.coverage_grids.clear();
    config.launch_count = 2000;
    // conducting screen at x = 5 covering y in [2, 30]
    config.scene_xml =
        "<scene frequency_hz=\"3.5e9\">"
        "<material name=\"metal\" permittivity=\"1\" conductivity=\"1e7\" permeability=\"1\"/>"
        "<object name=\"screen\" material=\"metal\">"
        "<tri v0=\"5 2 0\" v1=\"5 30 0\" v2=\"5 30 8\"/>"
        "<tri v0=\"5 2 0\" v1=\"5 30 8\" v2=\"5 2 8\"/>"
        "</object></scene>";
    config.transmitters[0].position = {0, 0, 2.0};
    config.receivers[0].position = {10.0, -2.0, 2.0};
    config.receivers[0].velocity = {0.0, 5.0, 0.0};  // walks +y behind the screen
    config.policy = {1, 1e-16};
    config.diffraction = false;
    config.snapshots = {0.0, 2.0};

    PreparedScenario prep = prepare_scenario(config);
    const auto links = time_series_channel(prep, config);
    REQUIRE(links.size() == 2);

    auto has_los = [](const SnapshotLink& link) {
        for (const PathRecord& p : link.paths)
            if (p.interaction_count() == 0) return true;
        return false;
    };
    CHECK(has_los(links[0]));
    CHECK(!has_los(links[1]));  // rx at y = 8 sits behind the screen
}

TEST_CASE("multi-device scenarios package every tx-rx link") {
    SimulationConfig config = shoebox_config();
    config.launch_count = 3000;
    config.coverage_grids.clear();
    Terminal bs1 = config.transmitters[0];
    bs1.id = "bs1";
    bs1.position = {4.0, 1.0, 2.5};
    config.transmitters.push_back(bs1);
    Terminal mt1 = config.receivers[0];
    mt1.id = "mt1";
    mt1.position = {2.5, 3.5, 1.0};
    config.receivers.push_back(mt1);

    const fs::path root = fresh_dir("multi");
    const RunSummary summary = run_scenario(config, root, {});
    CHECK(summary.path_counts.size() == 4);
    // scene + config + 4 x (paths csv, tensor, sidecar)
    CHECK(summary.manifest.size() == 14);
    int link_files = 0;
    for (const ManifestEntry& e : summary.manifest)
        if (e.link_or_grid_id == "bs1__mt1") ++link_files;
    CHECK(link_files == 3);
    CHECK_NOTHROW(read_package(root));
    fs::remove_all(root);
}

TEST_CASE("run_scenario packages are byte-identical across thread counts") {
    SimulationConfig config = shoebox_config();
    config.launch_count = 8000;
    config.coverage_grids[0].launch_count = 1500;

    const fs::path root_a = fresh_dir("threads1");
    const fs::path root_b = fresh_dir("threads4");
    RunOverrides one;
    one.threads = 1;
    RunOverrides four;
    four.threads = 4;
    const RunSummary a = run_scenario(config, root_a, one);
    const RunSummary b = run_scenario(config, root_b, four);

    REQUIRE(a.manifest.size() == b.manifest.size());
    for (size_t i = 0; i < a.manifest.size(); ++i) {
        CHECK(a.manifest[i].path == b.manifest[i].path);
        CHECK(a.manifest[i].sha256 == b.manifest[i].sha256);
    }

    // and the package passes full validation
    CHECK_NOTHROW(read_package(root_a));

    // manifest counting: scene, config, 1 paths CSV, 1 coverage CSV,
    // 1 coverage image, 1 tensor, 1 sidecar
    CHECK(a.manifest.size() == 7);

    // a second run into the same root refuses to clobber
    CHECK_THROWS_AS(run_scenario(config, root_a, one), PackageExistsError);
    fs::remove_all(root_a);
    fs::remove_all(root_b);
}
