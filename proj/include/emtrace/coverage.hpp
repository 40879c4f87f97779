// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <limits>
#include <string>
#include <vector>

#include "emtrace/bvh.hpp"
#include "emtrace/devices.hpp"
#include "emtrace/scene.hpp"
#include "emtrace/tracer.hpp"

namespace emtrace {

/// Planar sampling lattice. The plane passes through `center` with unit
/// `normal`; `in_plane_rotation` spins the cell axes about the normal.
struct GridSpec {
    std::string id;
    Vec3 center;
    double width{1.0};    // meters, along the grid x axis
    double height{1.0};   // meters, along the grid y axis
    Vec3 normal{0.0, 0.0, 1.0};
    double in_plane_rotation{0.0};  // radians
    double resolution{1.0};         // cells per meter

    void validate() const;
    int nx() const { return static_cast<int>(std::ceil(width * resolution)); }
    int ny() const { return static_cast<int>(std::ceil(height * resolution)); }
    Vec3 axis_x() const;
    Vec3 axis_y() const;
    /// World position of the cell center, ix in [0, nx), iy in [0, ny).
    Vec3 cell_center(int ix, int iy) const;
};

/// Marks cells reached by no path.
inline constexpr double kNoCoverage = -std::numeric_limits<double>::infinity();

struct CoverageGrid {
    GridSpec spec;
    std::vector<double> power_dbm;  // ny * nx, row-major (iy * nx + ix)

    double at(int ix, int iy) const { return power_dbm[static_cast<size_t>(iy) * spec.nx() + ix]; }
};

/// Received power per cell: 10 log10(P_tx * sum_l |gain_l|^2) in dBm,
/// non-coherent sum over the paths reaching the cell center. Cells with no
/// path hold kNoCoverage. Deterministic for fixed inputs. Throws
/// std::invalid_argument when the grid lies entirely outside the scene's
/// padded bounds.
CoverageGrid compute_coverage(const Scene& scene, const Bvh& bvh, const Terminal& tx,
                              const GridSpec& spec, const TerminationPolicy& policy, int launch_count,
                              const TraceOptions& base_options = {});

/// Binary PPM (P6) with a linear dB ramp over [db_min, db_max]; marker cells
/// render black. Palettes: "gray", "jet", "heat". Byte-deterministic.
std::string rasterize(const CoverageGrid& grid, const std::string& palette, double db_min,
                      double db_max);

/// CSV dump with header cell_x,cell_y,world_x,world_y,world_z,power_dbm.
std::string coverage_to_csv(const CoverageGrid& grid);

}  // namespace emtrace
