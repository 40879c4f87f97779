// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "emtrace/devices.hpp"
#include "emtrace/paths.hpp"

namespace emtrace {

/// One CIR tap: all paths binned to the same delay index, summed coherently
/// into an N_r x N_t matrix (row-major, rx-major).
struct CirTap {
    int index;                // delay bin, round(tau * bandwidth)
    std::vector<Complex> h;   // n_rx * n_tx entries, h[r * n_tx + t]
};

/// MIMO channel for one tx-rx link: CIR tap set and CFR sample grid.
struct ChannelResponse {
    std::string tx_id;
    std::string rx_id;
    int n_rx{1};
    int n_tx{1};
    std::vector<CirTap> cir;        // sorted by tap index
    std::vector<Complex> cfr;       // n_rx * n_tx * n_freq, rx-major then tx then freq
    double sample_rate{0.0};        // = bandwidth, tap resolution 1/B
    std::vector<double> freq_grid;  // carrier-relative, Hz
};

/// Impulse-response tap assembly: each path contributes
/// gain * a_r(AoA) * a_t(AoD)^H at tap round(delay * bandwidth); taps with
/// the same index sum and the list is sorted ascending.
std::vector<CirTap> assemble_cir(std::span<const PathRecord> paths, const AntennaArray& tx_array,
                                 const AntennaArray& rx_array, double wavelength, double bandwidth);

/// Exact frequency-response evaluation on a grid (no binning):
/// H(f) = sum_l gain_l a_r a_t^H e^{-j 2 pi f tau_l}. Layout matches
/// ChannelResponse::cfr.
std::vector<Complex> evaluate_cfr(std::span<const PathRecord> paths, const AntennaArray& tx_array,
                                  const AntennaArray& rx_array, double wavelength,
                                  std::span<const double> freq_grid);

/// F points spanning [-B/2, +B/2] inclusive (F == 1 gives {0}).
std::vector<double> default_freq_grid(double bandwidth, int points);

struct PathMetrics {
    double path_loss_db;
    double delay;
    double aod_az, aod_el;
    double aoa_az, aoa_el;
    double doppler_hz;
    double phase_rad;
};

/// Per-path table. Paths with zero gain are dropped and reported through
/// `warn` (defaults to a stderr log line).
std::vector<PathMetrics> path_metrics(std::span<const PathRecord> paths,
                                      const std::function<void(const std::string&)>& warn = {});

}  // namespace emtrace
