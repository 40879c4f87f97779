// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "emtrace/config.hpp"
#include "emtrace/dataset.hpp"

namespace emtrace {

struct SnapshotLink {
    std::string tx_id;
    std::string rx_id;
    int snapshot{0};
    double time_s{0.0};
    std::vector<PathRecord> paths;
    ChannelResponse channel;
};

/// Full MIMO responses for every tx-rx link across the configured snapshot
/// times. Mobile-terminal receivers advance as p + v t and every snapshot is
/// retraced. Throws std::invalid_argument for non-increasing times.
/// Aggregate trace statistics are accumulated into `stats` when non-null.
std::vector<SnapshotLink> time_series_channel(const PreparedScenario& prep,
                                              const SimulationConfig& config,
                                              TraceStats* stats = nullptr);

struct RunSummary {
    std::vector<ManifestEntry> manifest;
    std::uint64_t rays_launched{0};
    std::uint64_t segments_traced{0};
    double trace_seconds{0.0};
    std::vector<std::pair<std::string, size_t>> path_counts;  // "tx->rx[sK]" -> count
};

struct RunOverrides {
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
};

/// validate -> trace -> synthesize -> coverage -> package. Byte-identical
/// re-runs for a fixed seed regardless of thread count.
RunSummary run_scenario(const SimulationConfig& config, const std::filesystem::path& output_root,
                        const RunOverrides& overrides = {});

/// Computes one named coverage grid; returns the grid plus its CSV/PPM bytes.
struct CoverageArtifacts {
    CoverageGrid grid;
    std::string csv;
    std::string ppm;
};
CoverageArtifacts run_coverage(const SimulationConfig& config, const std::string& grid_id,
                               const RunOverrides& overrides = {});

}  // namespace emtrace
