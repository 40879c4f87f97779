// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emtrace/pose.hpp"
#include "emtrace/vec3.hpp"

namespace emtrace {

using Complex = std::complex<double>;

/// Azimuth/elevation direction. Azimuth is measured in the xy-plane from +x,
/// elevation from the xy-plane toward +z.
struct Direction {
    double azimuth{0.0};
    double elevation{0.0};

    Vec3 unit() const {
        const double ce = std::cos(elevation);
        return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
    }
    static Direction from_unit(const Vec3& u) {
        return {std::atan2(u.y, u.x), std::asin(std::clamp(u.z, -1.0, 1.0))};
    }
};

/// Uniform planar array. Element (row, col) sits at local offset
/// (0, col*spacing_h, row*spacing_v); element (0,0) is the phase reference.
struct AntennaArray {
    int rows{1};
    int cols{1};
    double spacing_v{0.05};  // meters
    double spacing_h{0.05};  // meters
    Mat3 orientation;        // local -> global

    int size() const { return rows * cols; }
    void validate() const;
    Vec3 element_offset(int row, int col) const {
        return orientation.apply({0.0, col * spacing_h, row * spacing_v});
    }
};

enum class Polarization { vertical, horizontal };

/// A transmitter or receiver: position, power, array, motion.
struct Terminal {
    std::string id;
    Vec3 position;
    double heading{0.0};  // radians about +z
    double tilt{0.0};     // radians about the heading-rotated y axis
    double tx_power_w{1.0};
    AntennaArray array;
    Vec3 velocity;  // m/s, zero when static
    Polarization polarization{Polarization::vertical};

    void validate() const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Steering vector over the array elements for a plane wave along `dir`
/// (pointing away from the array): element m gets e^{j (2 pi / lambda) k.r_m}.
/// The squared norm equals the element count.
std::vector<Complex> array_response(const AntennaArray& array, const Direction& dir, double wavelength);

/// Kinematic per-path Doppler. `k_dep` and `k_arr` are unit propagation
/// directions of the first and last path segments (pointing tx -> scene and
/// scene -> rx). Positive when the total path length is shrinking:
///   f_d = (v_tx . k_dep - v_rx . k_arr) / lambda.
double doppler_shift(const Vec3& k_dep, const Vec3& k_arr, const Vec3& v_tx, const Vec3& v_rx,
                     double wavelength);

/// Programmable reflective panel. Elements lie in the local xy-plane on a
/// uniform pitch, centered on `center`; frame columns are the local x, y
/// axes and the panel normal.
struct RisPanel {
    std::string id;
    int rows{1};
    int cols{1};
    double pitch{0.01};  // meters
    Vec3 center;
    Mat3 frame;
    std::vector<double> phase_profile;  // radians, wrapped to (-pi, pi]

    void validate() const;
    int size() const { return rows * cols; }
    Vec3 local_offset(int row, int col) const {
        return {(col - 0.5 * (cols - 1)) * pitch, (row - 0.5 * (rows - 1)) * pitch, 0.0};
    }
    Vec3 element_position(int row, int col) const {
        return center + frame.apply(local_offset(row, col));
    }
    Vec3 normal() const { return frame.column(2); }
};

/// Wraps an angle to (-pi, pi].
double wrap_phase(double phase);

/// Linear phase gradient steering the panel toward panel-local spherical
/// direction (theta0 from the normal, phi0 in the panel plane):
///   Phi(x, y) = -(2 pi / lambda)(x sin(theta0) cos(phi0) + y sin(theta0) sin(phi0)).
std::vector<double> ris_single_beam_profile(const RisPanel& panel, double theta0, double phi0,
                                            double wavelength);

/// Panel array factor sum_mn e^{j(Phi_mn + k u(theta,phi).r_mn)} for a given
/// phase profile, evaluated in panel-local spherical coordinates. Peak
/// magnitude equals the element count when the profile matches the direction.
Complex ris_array_factor(const RisPanel& panel, std::span<const double> phases, double theta,
                         double phi, double wavelength);

struct RisBeamTarget {
    double theta;   // panel-local polar angle
    double phi;     // panel-local azimuth
    double weight{1.0};
    double level{-1.0};  // desired |AF|; negative means "element count"
};

struct RisOptimizeResult {
    std::vector<double> phases;
    std::vector<double> objective_history;  // accepted iterations, non-increasing
};

/// Weighted least-squares fit of |array factor| to the target levels via
/// gradient descent with backtracking (accepted steps never increase the
/// objective). Deterministic for a fixed seed; the seed jitters the warm
/// start when nonzero. Throws std::invalid_argument for empty targets or
/// iterations < 1, and std::runtime_error if the objective turns non-finite.
RisOptimizeResult ris_multibeam_optimize(const RisPanel& panel, std::span<const RisBeamTarget> targets,
                                         double wavelength, int iterations, double step_size,
                                         std::uint64_t seed);

/// Element-normalized aperture sum for a ray arriving along unit propagation
/// direction `incident_prop` and re-radiating toward unit direction
/// `outgoing` (pointing away from the panel):
///   g = (1/N) sum_mn e^{j(Phi_mn + k (e_in + e_out) . r_mn)},
/// where e_in points from the panel toward the source. Returns 0 for
/// back-side illumination or departure. |g| <= 1.
Complex apply_ris_to_path(const RisPanel& panel, const Vec3& incident_prop, const Vec3& outgoing,
                          double wavelength);

}  // namespace emtrace
