// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <complex>
#include <utility>

namespace emtrace {

using Complex = std::complex<double>;

/// One planar interface seen by an incident ray: angle from the surface
/// normal, refractive indices on the incident (n1) and far (n2) side, and
/// the carrier wavelength.
struct InterfaceGeometry {
    double incident_angle;  // radians, [0, pi/2]
    Complex n1{1.0, 0.0};
    Complex n2{1.0, 0.0};
    double wavelength{0.1};  // meters

    void validate() const;
};

/// cos(theta_t) on the branch with Im <= 0, so transmitted waves decay
/// under the e^{-jkd} propagation convention. Shared by the coefficients.
Complex transmitted_cos(const InterfaceGeometry& geom);

/// Complex transmitted angle theta_t with sin(theta_t) = (n1/n2) sin(theta_i)
/// on the decaying branch.
Complex snell_angle(const InterfaceGeometry& geom);

/// Perpendicular (s) polarization reflection coefficient:
///   (n1 cos(theta_i) - n2 cos(theta_t)) / (n1 cos(theta_i) + n2 cos(theta_t)).
Complex fresnel_perp(const InterfaceGeometry& geom);

/// Parallel (p) polarization reflection coefficient:
///   (n2 cos(theta_i) - n1 cos(theta_t)) / (n2 cos(theta_i) + n1 cos(theta_t)).
/// Sign convention: at normal incidence Gamma_par = -Gamma_perp.
Complex fresnel_par(const InterfaceGeometry& geom);

/// Field transmission coefficients (T_perp, T_par) with T_perp = 1 + Gamma_perp
/// and T_par = (1 + Gamma_par) n1/n2, so that for a lossless interface
/// |Gamma|^2 + (n2 cos(theta_t))/(n1 cos(theta_i)) |T|^2 = 1 for both
/// polarizations.
std::pair<Complex, Complex> transmission_coeffs(const InterfaceGeometry& geom);

/// One segment of the propagation chain:
///   alpha_new = alpha_old * coeff * e^{-j k d} / d,  k = 2 pi / wavelength.
/// Throws std::invalid_argument for non-positive d or wavelength.
Complex update_amplitude(Complex alpha_old, Complex coeff, double segment_length, double wavelength);

}  // namespace emtrace
