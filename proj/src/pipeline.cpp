// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/pipeline.hpp"

#include <cstdio>
#include <stdexcept>

#include "emtrace/errors.hpp"
#include "emtrace/paths.hpp"

namespace emtrace {

namespace {

std::string snapshot_tag(int snapshot) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%03d", snapshot);
    return buf;
}

}  // namespace

std::vector<SnapshotLink> time_series_channel(const PreparedScenario& prep,
                                              const SimulationConfig& config, TraceStats* stats) {
    for (size_t i = 1; i < config.snapshots.size(); ++i)
        if (!(config.snapshots[i] > config.snapshots[i - 1]))
            throw std::invalid_argument("snapshot times must be strictly increasing");

    const double wavelength = prep.scene.wavelength();
    std::vector<SnapshotLink> links;
    for (size_t s = 0; s < config.snapshots.size(); ++s) {
        const double t = config.snapshots[s];
        std::vector<Terminal> receivers = prep.receivers;
        for (Terminal& rx : receivers) rx.position += rx.velocity * t;

        for (const Terminal& tx : prep.transmitters) {
            Terminal tx_now = tx;
            tx_now.position += tx.velocity * t;
            const TraceResult traced = trace_paths(prep.scene, prep.bvh, tx_now, receivers, prep.launch,
                                                   prep.options, prep.panels);
            if (stats != nullptr) {
                stats->rays_launched += traced.stats.rays_launched;
                stats->segments_traced += traced.stats.segments_traced;
                stats->seconds += traced.stats.seconds;
            }
            for (size_t r = 0; r < receivers.size(); ++r) {
                SnapshotLink link;
                link.tx_id = tx.id;
                link.rx_id = receivers[r].id;
                link.snapshot = static_cast<int>(s);
                link.time_s = t;
                link.paths = traced.paths_per_rx[r];

                ChannelResponse& ch = link.channel;
                ch.tx_id = tx.id;
                ch.rx_id = receivers[r].id;
                ch.n_tx = tx.array.size();
                ch.n_rx = receivers[r].array.size();
                ch.sample_rate = config.bandwidth_hz;
                ch.cir = assemble_cir(link.paths, tx.array, receivers[r].array, wavelength,
                                      config.bandwidth_hz);
                if (config.cfr_points > 0) {
                    ch.freq_grid = default_freq_grid(config.bandwidth_hz, config.cfr_points);
                    ch.cfr = evaluate_cfr(link.paths, tx.array, receivers[r].array, wavelength,
                                          ch.freq_grid);
                }
                links.push_back(std::move(link));
            }
        }
    }
    return links;
}

RunSummary run_scenario(const SimulationConfig& config_in, const std::filesystem::path& output_root,
                        const RunOverrides& overrides) {
    SimulationConfig config = config_in;
    if (overrides.threads) config.threads = *overrides.threads;
    if (overrides.seed) config.seed = *overrides.seed;

    PreparedScenario prep = prepare_scenario(config);

    RunSummary summary;
    ScenarioResults results;
    results.scene_xml = serialize_scene(prep.scene);
    results.config_json = config.normalized_json();

    // per-link traces, paths and channel tensors across snapshots
    TraceStats stats;
    std::vector<SnapshotLink> links = time_series_channel(prep, config, &stats);
    summary.rays_launched = stats.rays_launched;
    summary.segments_traced = stats.segments_traced;
    summary.trace_seconds = stats.seconds;
    const bool single_snapshot = config.snapshots.size() == 1;
    for (SnapshotLink& link : links) {
        const std::string link_id =
            link.tx_id + "__" + link.rx_id + (single_snapshot ? "" : "__" + snapshot_tag(link.snapshot));
        summary.path_counts.emplace_back(link.tx_id + "->" + link.rx_id +
                                             (single_snapshot ? "" : "@" + snapshot_tag(link.snapshot)),
                                         link.paths.size());

        PackageFile paths_csv;
        paths_csv.relative_path = "paths/" + link_id + ".csv";
        paths_csv.role = "paths";
        paths_csv.link_or_grid_id = link_id;
        paths_csv.bytes = paths_to_csv({link.paths}, {link.rx_id});
        results.outputs.push_back(std::move(paths_csv));

        PackageFile tensor;
        tensor.relative_path = "channels/" + link_id + ".bin";
        tensor.role = "channel_tensor";
        tensor.link_or_grid_id = link_id;
        tensor.bytes = encode_channel_tensor(link.channel, false);
        results.outputs.push_back(std::move(tensor));

        PackageFile meta;
        meta.relative_path = "channels/" + link_id + ".json";
        meta.role = "channel_meta";
        meta.link_or_grid_id = link_id;
        meta.bytes = channel_meta_json(link.channel, link.time_s);
        results.outputs.push_back(std::move(meta));

        if (config.emit_cfr && config.cfr_points > 0) {
            PackageFile cfr;
            cfr.relative_path = "channels/" + link_id + "_cfr.bin";
            cfr.role = "channel_tensor";
            cfr.link_or_grid_id = link_id;
            cfr.bytes = encode_channel_tensor(link.channel, true);
            results.outputs.push_back(std::move(cfr));
        }
    }

    // coverage grids from the first transmitter
    for (const CoverageConfig& cc : config.coverage_grids) {
        if (prep.transmitters.empty()) break;
        TraceOptions opts = prep.options;
        const CoverageGrid grid = compute_coverage(prep.scene, prep.bvh, prep.transmitters.front(),
                                                   cc.spec, config.policy, cc.launch_count, opts);
        PackageFile csv;
        csv.relative_path = "coverage/" + cc.spec.id + ".csv";
        csv.role = "coverage_grid";
        csv.link_or_grid_id = cc.spec.id;
        csv.bytes = coverage_to_csv(grid);
        results.outputs.push_back(std::move(csv));

        PackageFile ppm;
        ppm.relative_path = "coverage/" + cc.spec.id + ".ppm";
        ppm.role = "coverage_image";
        ppm.link_or_grid_id = cc.spec.id;
        ppm.bytes = rasterize(grid, cc.palette, cc.db_min, cc.db_max);
        results.outputs.push_back(std::move(ppm));
    }

    summary.manifest = write_package(results, output_root);
    return summary;
}

CoverageArtifacts run_coverage(const SimulationConfig& config_in, const std::string& grid_id,
                               const RunOverrides& overrides) {
    SimulationConfig config = config_in;
    if (overrides.threads) config.threads = *overrides.threads;
    if (overrides.seed) config.seed = *overrides.seed;

    const CoverageConfig* chosen = nullptr;
    for (const CoverageConfig& cc : config.coverage_grids)
        if (cc.spec.id == grid_id) chosen = &cc;
    if (chosen == nullptr) {
        std::string known;
        for (const CoverageConfig& cc : config.coverage_grids) {
            if (!known.empty()) known += ", ";
            known += cc.spec.id;
        }
        throw SemanticError("unknown coverage grid '" + grid_id + "' (available: " +
                            (known.empty() ? "none" : known) + ")");
    }

    PreparedScenario prep = prepare_scenario(config);
    if (prep.transmitters.empty()) throw SemanticError("no transmitter configured");

    CoverageArtifacts artifacts;
    artifacts.grid = compute_coverage(prep.scene, prep.bvh, prep.transmitters.front(), chosen->spec,
                                      config.policy, chosen->launch_count, prep.options);
    artifacts.csv = coverage_to_csv(artifacts.grid);
    artifacts.ppm = rasterize(artifacts.grid, chosen->palette, chosen->db_min, chosen->db_max);
    return artifacts;
}

}  // namespace emtrace
