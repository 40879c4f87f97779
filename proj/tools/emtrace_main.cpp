// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors
//
// Batch front end: validate a configuration, run the full pipeline into a
// scenario package, or compute a single coverage grid.
// Exit codes: 0 success, 1 validation failure, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "emtrace/config.hpp"
#include "emtrace/errors.hpp"
#include "emtrace/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int log_level() {
    const char* env = std::getenv("EMTRACE_LOG");
    if (env == nullptr) return 1;  // warnings
    const std::string v = env;
    if (v == "error") return 0;
    if (v == "info" || v == "debug") return 2;
    return 1;
}

int cmd_validate(const std::string& config_path) {
    json report;
    report["config"] = config_path;
    try {
        const emtrace::SimulationConfig config = emtrace::load_config(config_path);
        const auto issues = emtrace::validate_config(config);
        report["status"] = issues.empty() ? "ok" : "fail";
        json items = json::array();
        for (const auto& issue : issues) items.push_back({{"module", issue.module}, {"message", issue.message}});
        report["issues"] = items;
        std::cout << report.dump(2) << "\n";
        return issues.empty() ? 0 : 1;
    } catch (const std::exception& e) {
        report["status"] = "fail";
        report["issues"] = json::array({{{"module", "config"}, {"message", e.what()}}});
        std::cout << report.dump(2) << "\n";
        return 1;
    }
}

int cmd_run(const std::string& config_path, const std::string& output_dir,
            const emtrace::RunOverrides& overrides) {
    const emtrace::SimulationConfig config = emtrace::load_config(config_path);
    const auto issues = emtrace::validate_config(config);
    if (!issues.empty()) {
        for (const auto& issue : issues)
            std::cerr << "[" << issue.module << "] " << issue.message << "\n";
        return 1;
    }
    const emtrace::RunSummary summary = emtrace::run_scenario(config, output_dir, overrides);
    std::cout << "package: " << output_dir << "\n";
    if (log_level() >= 1) {
        std::cout << "artifacts: " << summary.manifest.size() << "\n";
        std::cout << "rays: " << summary.rays_launched << "\n";
        std::cout << "segments: " << summary.segments_traced << "\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f", summary.trace_seconds);
        std::cout << "trace_seconds: " << buf << "\n";
        if (summary.trace_seconds > 0.0) {
            std::snprintf(buf, sizeof(buf), "%.3g",
                          static_cast<double>(summary.segments_traced) / summary.trace_seconds);
            std::cout << "segments_per_second: " << buf << "\n";
        }
        for (const auto& [link, count] : summary.path_counts)
            std::cout << "paths " << link << ": " << count << "\n";
    }
    return 0;
}

int cmd_coverage(const std::string& config_path, const std::string& grid_id,
                 const std::string& image_path, const emtrace::RunOverrides& overrides) {
    const emtrace::SimulationConfig config = emtrace::load_config(config_path);
    const auto issues = emtrace::validate_config(config);
    if (!issues.empty()) {
        for (const auto& issue : issues)
            std::cerr << "[" << issue.module << "] " << issue.message << "\n";
        return 1;
    }
    const emtrace::CoverageArtifacts artifacts = emtrace::run_coverage(config, grid_id, overrides);
    const fs::path image{image_path};
    std::ofstream img(image, std::ios::binary);
    img.write(artifacts.ppm.data(), static_cast<std::streamsize>(artifacts.ppm.size()));
    fs::path csv_path = image;
    csv_path.replace_extension(".csv");
    std::ofstream csv(csv_path);
    csv << artifacts.csv;
    std::cout << "grid " << grid_id << ": " << artifacts.grid.spec.nx() << "x"
              << artifacts.grid.spec.ny() << " cells -> " << image_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic radio ray tracing and channel synthesis"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::string grid_id;
    std::string image_path;
    int threads = -1;
    long long seed = -1;

    CLI::App* validate = app.add_subcommand("validate", "check a configuration and print a report");
    validate->add_option("config", config_path, "configuration JSON")->required();

    CLI::App* run = app.add_subcommand("run", "trace, synthesize and package a scenario");
    run->add_option("config", config_path, "configuration JSON")->required();
    run->add_option("-o,--output", output_dir, "output package directory")->required();
    run->add_option("--threads", threads, "worker threads (0 = all cores)");
    run->add_option("--seed", seed, "override the configuration seed");

    CLI::App* coverage = app.add_subcommand("coverage", "compute one named coverage grid");
    coverage->add_option("config", config_path, "configuration JSON")->required();
    coverage->add_option("--grid", grid_id, "grid id from the configuration")->required();
    coverage->add_option("-o,--output", image_path, "output PPM image path")->required();
    coverage->add_option("--threads", threads, "worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    emtrace::RunOverrides overrides;
    if (threads >= 0) overrides.threads = threads;
    if (seed >= 0) overrides.seed = static_cast<std::uint64_t>(seed);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (run->parsed()) return cmd_run(config_path, output_dir, overrides);
        if (coverage->parsed()) return cmd_coverage(config_path, grid_id, image_path, overrides);
    } catch (const emtrace::PackageExistsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const emtrace::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const emtrace::SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        if (log_level() >= 0) std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
