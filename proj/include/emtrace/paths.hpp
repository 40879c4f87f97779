// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "emtrace/devices.hpp"
#include "emtrace/vec3.hpp"

namespace emtrace {

enum class InteractionKind : std::uint8_t { reflection, transmission, diffraction, ris };

const char* to_string(InteractionKind kind);

struct InteractionEvent {
    InteractionKind kind;
    Vec3 point;               // on the object's surface
    int object_index{-1};
    double incident_angle{0.0};  // radians from the surface normal, [0, pi/2]
    double segment_length{0.0};  // length of the segment arriving here, > 0
};

/// Ray pruning bounds: a ray stops once it has spent
/// max_interactions or its power drops to min_power_w. max_interactions 0
/// means line-of-sight only; config validation additionally requires >= 1.
struct TerminationPolicy {
    int max_interactions{3};
    double min_power_w{1e-15};

    void validate() const;
};

/// One resolved multipath component between a tx and an rx.
struct PathRecord {
    Complex gain;           // Friis-anchored field transfer (lambda/(4 pi d) for LOS)
    double delay{0.0};      // seconds, total length / c
    Direction aod;          // departure direction at the tx
    Direction aoa;          // arrival direction at the rx (toward the last hop)
    double doppler_hz{0.0};
    std::array<Complex, 4> pol_matrix{};  // row-major 2x2, (theta,phi)_tx -> (theta,phi)_rx
    std::vector<InteractionEvent> interactions;

    int interaction_count() const { return static_cast<int>(interactions.size()); }

    /// Merge/sort key: ordered (kind, object) pairs plus the delay quantized
    /// to 0.1 ns (distinguishes distinct specular solutions on one object).
    std::string signature() const;
};

/// CSV dump, one row per path:
/// receiver id, path id, |gain|, phase, delay, AoD az/el, AoA az/el,
/// interaction count, semicolon-separated kind:x:y:z interaction list.
/// Angles in radians. Byte-deterministic.
std::string paths_to_csv(const std::vector<std::vector<PathRecord>>& paths_per_rx,
                         const std::vector<std::string>& rx_ids);

}  // namespace emtrace
