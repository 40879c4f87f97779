// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "emtrace/bvh.hpp"
#include "emtrace/devices.hpp"
#include "emtrace/paths.hpp"
#include "emtrace/scene.hpp"

namespace emtrace {

struct TraceOptions {
    TerminationPolicy policy;
    double capture_radius{0.5};  // meters, candidate detection only
    bool enable_diffraction{true};
    int threads{0};       // 0 = hardware concurrency
    int block_size{8192};  // launch rays per work block; fixed so results do not depend on threads
};

struct TraceStats {
    std::uint64_t rays_launched{0};
    std::uint64_t segments_traced{0};
    double seconds{0.0};
};

struct TraceResult {
    std::vector<std::vector<PathRecord>> paths_per_rx;  // same order as the receiver span
    TraceStats stats;
};

/// Finds multipath components from `tx` to every receiver.
///
/// Launch rays march through the scene with greedy nearest-hit stepping,
/// branching into reflected and transmitted continuations until the
/// termination policy prunes them. A ray segment passing within
/// `capture_radius` of a receiver only nominates a candidate interaction
/// signature; every candidate is then refined with the image/unfold method
/// and re-walked against the geometry, so reported delays, angles and gains
/// are exact. The direct (zero-interaction) signature is always nominated.
/// First-order edge diffraction candidates are generated from silhouette
/// wedge edges when enabled. Duplicate signatures are merged and the output
/// is sorted by signature, independent of thread count.
TraceResult trace_paths(const Scene& scene, const Bvh& bvh, const Terminal& tx,
                        std::span<const Terminal> receivers, std::span<const Vec3> launch_directions,
                        const TraceOptions& options, std::span<const RisPanel> ris_panels = {});

}  // namespace emtrace
