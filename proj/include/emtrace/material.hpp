// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <complex>
#include <string>

namespace emtrace {

inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

/// Electromagnetic surface material. Frequency-independent constants; the
/// complex refractive index is derived on demand for a given carrier.
struct Material {
    std::string name;
    double relative_permittivity{1.0};  // >= 1
    double conductivity{0.0};           // S/m, >= 0
    double relative_permeability{1.0};  // > 0
    double scattering_fraction{0.0};    // [0,1], reserved

    /// Throws std::invalid_argument when a field violates its range.
    void validate() const;

    /// n = sqrt(eps_r - j sigma/(omega eps0)). Principal branch, Im(n) <= 0,
    /// so fields propagating as e^{-jknd} decay in lossy media; the
    /// attenuation index -Im(n) is zero exactly when conductivity is zero.
    std::complex<double> refractive_index(double frequency_hz) const;
};

}  // namespace emtrace
