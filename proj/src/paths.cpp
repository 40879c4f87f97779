// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/paths.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "emtrace/strfmt.hpp"

namespace emtrace {

const char* to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::reflection: return "reflection";
        case InteractionKind::transmission: return "transmission";
        case InteractionKind::diffraction: return "diffraction";
        case InteractionKind::ris: return "ris";
    }
    return "unknown";
}

void TerminationPolicy::validate() const {
    if (max_interactions < 0) throw std::invalid_argument("max_interactions must be >= 0");
    if (!(min_power_w > 0.0)) throw std::invalid_argument("min_power must be > 0");
}

std::string PathRecord::signature() const {
    std::string sig;
    char buf[96];
    for (const InteractionEvent& ev : interactions) {
        // the quantized event point (0.1 mm) separates geometrically distinct
        // paths that share the same object sequence
        std::snprintf(buf, sizeof(buf), "%c%06d:%lld:%lld:%lld|", "rtdi"[static_cast<int>(ev.kind)],
                      ev.object_index, static_cast<long long>(std::llround(ev.point.x * 1e4)),
                      static_cast<long long>(std::llround(ev.point.y * 1e4)),
                      static_cast<long long>(std::llround(ev.point.z * 1e4)));
        sig += buf;
    }
    std::snprintf(buf, sizeof(buf), "#%015lld", static_cast<long long>(std::llround(delay * 1e10)));
    sig += buf;
    return sig;
}

std::string paths_to_csv(const std::vector<std::vector<PathRecord>>& paths_per_rx,
                         const std::vector<std::string>& rx_ids) {
    std::string csv =
        "receiver_id,path_id,gain_abs,phase_rad,delay_s,aod_az_rad,aod_el_rad,aoa_az_rad,aoa_el_rad,"
        "interaction_count,interactions\n";
    for (size_t r = 0; r < paths_per_rx.size(); ++r) {
        const std::string rx = r < rx_ids.size() ? rx_ids[r] : std::to_string(r);
        int path_id = 0;
        for (const PathRecord& p : paths_per_rx[r]) {
            csv += rx + "," + std::to_string(path_id++) + "," + format_double(std::abs(p.gain)) + "," +
                   format_double(std::arg(p.gain)) + "," + format_double(p.delay) + "," +
                   format_double(p.aod.azimuth) + "," + format_double(p.aod.elevation) + "," +
                   format_double(p.aoa.azimuth) + "," + format_double(p.aoa.elevation) + "," +
                   std::to_string(p.interaction_count()) + ",";
            std::string events;
            for (const InteractionEvent& ev : p.interactions) {
                if (!events.empty()) events += ";";
                events += std::string(to_string(ev.kind)) + ":" + format_double(ev.point.x) + ":" +
                          format_double(ev.point.y) + ":" + format_double(ev.point.z);
            }
            csv += events + "\n";
        }
    }
    return csv;
}

}  // namespace emtrace
