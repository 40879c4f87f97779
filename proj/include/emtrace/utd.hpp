// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <complex>
#include <utility>

#include "emtrace/vec3.hpp"

namespace emtrace {

using Complex = std::complex<double>;

/// Standard Fresnel integrals C(x) = int_0^x cos(pi t^2 / 2) dt and
/// S(x) = int_0^x sin(pi t^2 / 2) dt (Mielenz's series / auxiliary-function
/// method, ~1e-9 absolute accuracy).
std::pair<double, double> fresnel_integrals(double x);

/// UTD transition function F(X) = 2j sqrt(X) e^{jX} int_{sqrt(X)}^inf e^{-j t^2} dt.
Complex transition_function(double x);

/// A straight wedge. The air region spans angles (0, n*pi) measured from
/// `face_o_dir` rotating counterclockwise about `edge_dir` (right-hand rule),
/// with n = (2*pi - interior_angle)/pi. `face_o_dir` is a unit vector
/// perpendicular to the edge pointing from the edge into the o-face surface.
struct WedgeGeometry {
    Vec3 edge_point;
    Vec3 edge_dir;        // unit tangent
    Vec3 face_o_dir;      // unit, perpendicular to edge_dir
    double interior_angle;  // material angle, [0, 2*pi)

    double angle_parameter() const;  // n = (2*pi - interior)/pi
};

struct DiffractionCoeff {
    Complex soft;  // E-field parallel to the edge
    Complex hard;  // E-field perpendicular to the edge
};

/// Kouyoumjian-Pathak four-term coefficient for a perfectly conducting wedge,
/// scaled by the spherical-wave spreading factor sqrt(s_inc/(s_dif*(s_inc+s_dif))).
/// `incident_prop` points toward the edge, `diffracted_prop` away from it;
/// both must satisfy the Keller cone within 1e-6 rad or std::invalid_argument
/// is thrown. Finite and continuous across the shadow boundaries.
DiffractionCoeff utd_diffraction_coeff(const WedgeGeometry& wedge, const Vec3& incident_prop,
                                       const Vec3& diffracted_prop, double s_incident,
                                       double s_diffracted, double wavelength);

}  // namespace emtrace
