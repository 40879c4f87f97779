// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/fresnel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emtrace {

void InterfaceGeometry::validate() const {
    if (!(incident_angle >= 0.0 && incident_angle <= std::numbers::pi / 2.0))
        throw std::invalid_argument("incident angle must lie in [0, pi/2]");
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    if (n1.real() < 1.0 || n2.real() < 1.0)
        throw std::invalid_argument("refractive indices must have real part >= 1");
}

Complex transmitted_cos(const InterfaceGeometry& geom) {
    geom.validate();
    const Complex sin_t = (geom.n1 / geom.n2) * std::sin(geom.incident_angle);
    Complex cos_t = std::sqrt(Complex(1.0, 0.0) - sin_t * sin_t);
    if (cos_t.imag() > 0.0) cos_t = -cos_t;
    return cos_t;
}

Complex snell_angle(const InterfaceGeometry& geom) {
    const Complex sin_t = (geom.n1 / geom.n2) * std::sin(geom.incident_angle);
    const Complex cos_t = transmitted_cos(geom);
    Complex theta = std::acos(cos_t);
    // acos pins the cosine; pick the sign that also reproduces sin_t
    if (std::abs(std::sin(theta) - sin_t) > std::abs(std::sin(-theta) - sin_t)) theta = -theta;
    return theta;
}

Complex fresnel_perp(const InterfaceGeometry& geom) {
    const double cos_i = std::cos(geom.incident_angle);
    const Complex cos_t = transmitted_cos(geom);
    return (geom.n1 * cos_i - geom.n2 * cos_t) / (geom.n1 * cos_i + geom.n2 * cos_t);
}

Complex fresnel_par(const InterfaceGeometry& geom) {
    const double cos_i = std::cos(geom.incident_angle);
    const Complex cos_t = transmitted_cos(geom);
    return (geom.n2 * cos_i - geom.n1 * cos_t) / (geom.n2 * cos_i + geom.n1 * cos_t);
}

std::pair<Complex, Complex> transmission_coeffs(const InterfaceGeometry& geom) {
    const Complex t_perp = 1.0 + fresnel_perp(geom);
    const Complex t_par = (1.0 + fresnel_par(geom)) * (geom.n1 / geom.n2);
    return {t_perp, t_par};
}

Complex update_amplitude(Complex alpha_old, Complex coeff, double segment_length, double wavelength) {
    if (!(segment_length > 0.0)) throw std::invalid_argument("segment length must be > 0");
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    const double k = 2.0 * std::numbers::pi / wavelength;
    return alpha_old * coeff * std::polar(1.0, -k * segment_length) / segment_length;
}

}  // namespace emtrace
