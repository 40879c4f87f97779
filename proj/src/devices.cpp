// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/devices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace emtrace {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void AntennaArray::validate() const {
    if (rows < 1 || cols < 1) throw std::invalid_argument("antenna array needs at least one element");
    if (!(spacing_v > 0.0) || !(spacing_h > 0.0))
        throw std::invalid_argument("antenna element spacing must be > 0");
}

void Terminal::validate() const {
    if (id.empty()) throw std::invalid_argument("terminal id must be non-empty");
    if (!std::isfinite(tx_power_w) || !(tx_power_w > 0.0))
        throw std::invalid_argument("terminal '" + id + "': transmit power must be finite and > 0");
    array.validate();
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

std::vector<Complex> array_response(const AntennaArray& array, const Direction& dir, double wavelength) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    array.validate();
    const Vec3 k_hat = dir.unit();
    const double k = kTwoPi / wavelength;
    std::vector<Complex> response;
    response.reserve(static_cast<size_t>(array.size()));
    for (int r = 0; r < array.rows; ++r)
        for (int c = 0; c < array.cols; ++c)
            response.push_back(std::polar(1.0, k * dot(k_hat, array.element_offset(r, c))));
    return response;
}

double doppler_shift(const Vec3& k_dep, const Vec3& k_arr, const Vec3& v_tx, const Vec3& v_rx,
                     double wavelength) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    return (dot(v_tx, k_dep) - dot(v_rx, k_arr)) / wavelength;
}

void RisPanel::validate() const {
    if (rows < 1 || cols < 1) throw std::invalid_argument("RIS panel needs at least one element");
    if (!(pitch > 0.0)) throw std::invalid_argument("RIS element pitch must be > 0");
    if (!phase_profile.empty() && phase_profile.size() != static_cast<size_t>(size()))
        throw std::invalid_argument("RIS phase profile size does not match the element grid");
    const Mat3 f = frame;
    Pose p{f, {}};
    if (!p.is_valid(1e-9)) throw std::invalid_argument("RIS frame must be a proper orthonormal basis");
}

double wrap_phase(double phase) {
    double w = std::remainder(phase, kTwoPi);  // (-pi, pi], except -pi for exact halves
    if (w <= -std::numbers::pi) w += kTwoPi;
    return w;
}

std::vector<double> ris_single_beam_profile(const RisPanel& panel, double theta0, double phi0,
                                            double wavelength) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    panel.validate();
    const double k = kTwoPi / wavelength;
    const double ux = std::sin(theta0) * std::cos(phi0);
    const double uy = std::sin(theta0) * std::sin(phi0);
    std::vector<double> phases;
    phases.reserve(static_cast<size_t>(panel.size()));
    for (int r = 0; r < panel.rows; ++r)
        for (int c = 0; c < panel.cols; ++c) {
            const Vec3 off = panel.local_offset(r, c);
            phases.push_back(wrap_phase(-k * (off.x * ux + off.y * uy)));
        }
    return phases;
}

Complex ris_array_factor(const RisPanel& panel, std::span<const double> phases, double theta,
                         double phi, double wavelength) {
    if (phases.size() != static_cast<size_t>(panel.size()))
        throw std::invalid_argument("phase profile size does not match the panel");
    const double k = kTwoPi / wavelength;
    const double ux = std::sin(theta) * std::cos(phi);
    const double uy = std::sin(theta) * std::sin(phi);
    Complex sum{0.0, 0.0};
    size_t i = 0;
    for (int r = 0; r < panel.rows; ++r)
        for (int c = 0; c < panel.cols; ++c, ++i) {
            const Vec3 off = panel.local_offset(r, c);
            sum += std::polar(1.0, phases[i] + k * (off.x * ux + off.y * uy));
        }
    return sum;
}

RisOptimizeResult ris_multibeam_optimize(const RisPanel& panel, std::span<const RisBeamTarget> targets,
                                         double wavelength, int iterations, double step_size,
                                         std::uint64_t seed) {
    if (targets.empty()) throw std::invalid_argument("at least one beam target is required");
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (!(step_size > 0.0)) throw std::invalid_argument("step size must be > 0");
    panel.validate();

    const int n = panel.size();
    const double k = kTwoPi / wavelength;

    // steering phase k u . r per (target, element)
    std::vector<double> steer(targets.size() * static_cast<size_t>(n));
    std::vector<double> desired(targets.size());
    std::vector<double> weight(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) {
        const double ux = std::sin(targets[t].theta) * std::cos(targets[t].phi);
        const double uy = std::sin(targets[t].theta) * std::sin(targets[t].phi);
        desired[t] = targets[t].level < 0.0 ? static_cast<double>(n) : targets[t].level;
        weight[t] = targets[t].weight;
        size_t i = 0;
        for (int r = 0; r < panel.rows; ++r)
            for (int c = 0; c < panel.cols; ++c, ++i) {
                const Vec3 off = panel.local_offset(r, c);
                steer[t * static_cast<size_t>(n) + i] = k * (off.x * ux + off.y * uy);
            }
    }

    // warm start: phase-conjugate superposition of the weighted targets
    std::vector<double> phases(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (size_t t = 0; t < targets.size(); ++t)
            acc += weight[t] * std::polar(1.0, -steer[t * static_cast<size_t>(n) + static_cast<size_t>(i)]);
        phases[static_cast<size_t>(i)] = std::abs(acc) > 0.0 ? std::arg(acc) : 0.0;
    }
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jitter(-0.05, 0.05);
        for (double& p : phases) p = wrap_phase(p + jitter(rng));
    }

    auto objective_and_gradient = [&](const std::vector<double>& ph, std::vector<double>* grad) {
        if (grad) std::fill(grad->begin(), grad->end(), 0.0);
        double j = 0.0;
        for (size_t t = 0; t < targets.size(); ++t) {
            Complex af{0.0, 0.0};
            for (int i = 0; i < n; ++i)
                af += std::polar(1.0, ph[static_cast<size_t>(i)] +
                                          steer[t * static_cast<size_t>(n) + static_cast<size_t>(i)]);
            const double mag = std::abs(af);
            const double err = mag - desired[t];
            j += weight[t] * err * err;
            if (grad && mag > 1e-12) {
                const Complex unit = af / mag;
                for (int i = 0; i < n; ++i) {
                    const Complex term = std::polar(1.0, ph[static_cast<size_t>(i)] +
                                                             steer[t * static_cast<size_t>(n) +
                                                                   static_cast<size_t>(i)]);
                    // d|AF|/dphi_i = Re(conj(AF/|AF|) * j * term) = -Im(conj(unit) * term)
                    const double dmag = -std::imag(std::conj(unit) * term);
                    (*grad)[static_cast<size_t>(i)] += 2.0 * weight[t] * err * dmag;
                }
            }
        }
        return j;
    };

    RisOptimizeResult result;
    result.phases = phases;
    std::vector<double> grad(static_cast<size_t>(n), 0.0);
    std::vector<double> trial(static_cast<size_t>(n), 0.0);
    double current = objective_and_gradient(result.phases, &grad);
    if (!std::isfinite(current)) throw std::runtime_error("RIS optimization objective is not finite");
    result.objective_history.push_back(current);

    double step = step_size;
    for (int it = 0; it < iterations; ++it) {
        bool accepted = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            for (int i = 0; i < n; ++i)
                trial[static_cast<size_t>(i)] =
                    wrap_phase(result.phases[static_cast<size_t>(i)] - step * grad[static_cast<size_t>(i)]);
            const double j = objective_and_gradient(trial, nullptr);
            if (!std::isfinite(j)) throw std::runtime_error("RIS optimization objective is not finite");
            if (j <= current) {
                result.phases = trial;
                current = j;
                accepted = true;
                step *= 1.2;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // gradient step cannot improve further
        result.objective_history.push_back(current);
        objective_and_gradient(result.phases, &grad);
    }
    return result;
}

Complex apply_ris_to_path(const RisPanel& panel, const Vec3& incident_prop, const Vec3& outgoing,
                          double wavelength) {
    panel.validate();
    if (panel.phase_profile.size() != static_cast<size_t>(panel.size()))
        throw std::invalid_argument("RIS panel has no phase profile");
    const Vec3 n = panel.normal();
    const Vec3 toward_source = -incident_prop;
    if (dot(toward_source, n) <= 0.0 || dot(outgoing, n) <= 0.0) return {0.0, 0.0};

    const double k = kTwoPi / wavelength;
    Complex sum{0.0, 0.0};
    size_t i = 0;
    for (int r = 0; r < panel.rows; ++r)
        for (int c = 0; c < panel.cols; ++c, ++i) {
            const Vec3 off = panel.frame.apply(panel.local_offset(r, c));
            const double geom_phase = k * dot(toward_source + outgoing, off);
            sum += std::polar(1.0, panel.phase_profile[i] + geom_phase);
        }
    return sum / static_cast<double>(panel.size());
}

}  // namespace emtrace
