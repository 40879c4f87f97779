// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/material.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emtrace {

void Material::validate() const {
    if (name.empty()) throw std::invalid_argument("material name must be non-empty");
    if (!(relative_permittivity >= 1.0) || !std::isfinite(relative_permittivity))
        throw std::invalid_argument("material '" + name + "': relative_permittivity must be >= 1");
    if (!(conductivity >= 0.0) || !std::isfinite(conductivity))
        throw std::invalid_argument("material '" + name + "': conductivity must be >= 0");
    if (!(relative_permeability > 0.0) || !std::isfinite(relative_permeability))
        throw std::invalid_argument("material '" + name + "': relative_permeability must be > 0");
    if (!(scattering_fraction >= 0.0 && scattering_fraction <= 1.0))
        throw std::invalid_argument("material '" + name + "': scattering_fraction must be in [0,1]");
}

std::complex<double> Material::refractive_index(double frequency_hz) const {
    if (!(frequency_hz > 0.0)) throw std::invalid_argument("frequency must be > 0");
    const double omega = 2.0 * std::numbers::pi * frequency_hz;
    const std::complex<double> eps_c(relative_permittivity, -conductivity / (omega * kVacuumPermittivity));
    // principal sqrt keeps Re >= 0; for Im(eps_c) <= 0 it lands in the fourth
    // quadrant, so e^{-jknd} decays in lossy media
    return std::sqrt(eps_c * relative_permeability);
}

}  // namespace emtrace
