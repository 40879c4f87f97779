// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

namespace emtrace {

std::vector<CirTap> assemble_cir(std::span<const PathRecord> paths, const AntennaArray& tx_array,
                                 const AntennaArray& rx_array, double wavelength, double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    const int n_tx = tx_array.size();
    const int n_rx = rx_array.size();

    std::map<int, std::vector<Complex>> taps;
    for (const PathRecord& p : paths) {
        const int tap = static_cast<int>(std::llround(p.delay * bandwidth));
        auto& h = taps[tap];
        if (h.empty()) h.assign(static_cast<size_t>(n_rx * n_tx), Complex{0.0, 0.0});
        const auto a_t = array_response(tx_array, p.aod, wavelength);
        const auto a_r = array_response(rx_array, p.aoa, wavelength);
        for (int r = 0; r < n_rx; ++r)
            for (int t = 0; t < n_tx; ++t)
                h[static_cast<size_t>(r * n_tx + t)] +=
                    p.gain * a_r[static_cast<size_t>(r)] * std::conj(a_t[static_cast<size_t>(t)]);
    }

    std::vector<CirTap> out;
    out.reserve(taps.size());
    for (auto& [index, h] : taps) out.push_back({index, std::move(h)});
    return out;  // std::map iteration is already ascending
}

std::vector<Complex> evaluate_cfr(std::span<const PathRecord> paths, const AntennaArray& tx_array,
                                  const AntennaArray& rx_array, double wavelength,
                                  std::span<const double> freq_grid) {
    if (freq_grid.empty()) throw std::invalid_argument("frequency grid must be non-empty");
    for (double f : freq_grid)
        if (!std::isfinite(f)) throw std::invalid_argument("frequency grid must be finite");
    const int n_tx = tx_array.size();
    const int n_rx = rx_array.size();
    const size_t n_f = freq_grid.size();

    std::vector<Complex> cfr(static_cast<size_t>(n_rx * n_tx) * n_f, Complex{0.0, 0.0});
    for (const PathRecord& p : paths) {
        const auto a_t = array_response(tx_array, p.aod, wavelength);
        const auto a_r = array_response(rx_array, p.aoa, wavelength);
        for (size_t fi = 0; fi < n_f; ++fi) {
            const Complex rot = p.gain * std::polar(1.0, -2.0 * std::numbers::pi * freq_grid[fi] * p.delay);
            for (int r = 0; r < n_rx; ++r)
                for (int t = 0; t < n_tx; ++t)
                    cfr[(static_cast<size_t>(r * n_tx + t)) * n_f + fi] +=
                        rot * a_r[static_cast<size_t>(r)] * std::conj(a_t[static_cast<size_t>(t)]);
        }
    }
    return cfr;
}

std::vector<double> default_freq_grid(double bandwidth, int points) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (points < 1) throw std::invalid_argument("frequency point count must be >= 1");
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(points));
    if (points == 1) {
        grid.push_back(0.0);
        return grid;
    }
    for (int i = 0; i < points; ++i)
        grid.push_back(-bandwidth / 2.0 + bandwidth * i / (points - 1));
    return grid;
}

std::vector<PathMetrics> path_metrics(std::span<const PathRecord> paths,
                                      const std::function<void(const std::string&)>& warn) {
    std::vector<PathMetrics> out;
    out.reserve(paths.size());
    int dropped = 0;
    for (const PathRecord& p : paths) {
        const double mag = std::abs(p.gain);
        if (!(mag > 0.0)) {
            ++dropped;
            continue;
        }
        out.push_back({-20.0 * std::log10(mag), p.delay, p.aod.azimuth, p.aod.elevation, p.aoa.azimuth,
                       p.aoa.elevation, p.doppler_hz, std::arg(p.gain)});
    }
    if (dropped > 0) {
        const std::string msg = "dropped " + std::to_string(dropped) + " zero-gain path(s)";
        if (warn)
            warn(msg);
        else
            std::fprintf(stderr, "[emtrace] warning: %s\n", msg.c_str());
    }
    return out;
}

}  // namespace emtrace
