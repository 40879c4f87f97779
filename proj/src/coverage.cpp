// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emtrace/directions.hpp"
#include "emtrace/strfmt.hpp"

namespace emtrace {

void GridSpec::validate() const {
    if (!(width > 0.0) || !(height > 0.0)) throw std::invalid_argument("grid extent must be > 0");
    if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be > 0");
    if (norm(normal) < 1e-12) throw std::invalid_argument("grid normal must be non-zero");
}

Vec3 GridSpec::axis_x() const {
    const Vec3 n = normalized(normal);
    const Vec3 base = any_orthonormal(n);
    const Vec3 other = cross(n, base);
    return base * std::cos(in_plane_rotation) + other * std::sin(in_plane_rotation);
}

Vec3 GridSpec::axis_y() const { return cross(normalized(normal), axis_x()); }

Vec3 GridSpec::cell_center(int ix, int iy) const {
    const double cell = 1.0 / resolution;
    const Vec3 ax = axis_x();
    const Vec3 ay = axis_y();
    const double x0 = -0.5 * width + (ix + 0.5) * cell;
    const double y0 = -0.5 * height + (iy + 0.5) * cell;
    return center + ax * x0 + ay * y0;
}

CoverageGrid compute_coverage(const Scene& scene, const Bvh& bvh, const Terminal& tx,
                              const GridSpec& spec, const TerminationPolicy& policy, int launch_count,
                              const TraceOptions& base_options) {
    spec.validate();
    policy.validate();
    if (launch_count < 1) throw std::invalid_argument("launch count must be >= 1");

    // the grid rectangle must touch the scene's padded bounds
    Aabb grid_box;
    grid_box.expand(spec.cell_center(0, 0));
    grid_box.expand(spec.cell_center(spec.nx() - 1, 0));
    grid_box.expand(spec.cell_center(0, spec.ny() - 1));
    grid_box.expand(spec.cell_center(spec.nx() - 1, spec.ny() - 1));
    if (!grid_box.overlaps(scene.padded_bounds()))
        throw std::invalid_argument("coverage grid lies entirely outside the scene bounds");

    const int nx = spec.nx();
    const int ny = spec.ny();
    std::vector<Terminal> cells;
    cells.reserve(static_cast<size_t>(nx) * static_cast<size_t>(ny));
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            Terminal cell;
            cell.id = "cell";
            cell.position = spec.cell_center(ix, iy);
            cell.polarization = Polarization::vertical;
            cells.push_back(std::move(cell));
        }

    TraceOptions options = base_options;
    options.policy = policy;
    const auto launch = fibonacci_directions(launch_count);
    const TraceResult traced = trace_paths(scene, bvh, tx, cells, launch, options);

    CoverageGrid grid;
    grid.spec = spec;
    grid.power_dbm.assign(cells.size(), kNoCoverage);
    for (size_t c = 0; c < cells.size(); ++c) {
        const auto& paths = traced.paths_per_rx[c];
        if (paths.empty()) continue;
        double sum = 0.0;  // paths arrive sorted by signature: deterministic order
        for (const PathRecord& p : paths) sum += std::norm(p.gain);
        if (sum > 0.0) grid.power_dbm[c] = watts_to_dbm(tx.tx_power_w * sum);
    }
    return grid;
}

namespace {

struct Rgb {
    unsigned char r, g, b;
};

Rgb palette_color(const std::string& palette, double u) {
    u = std::clamp(u, 0.0, 1.0);
    auto byte = [](double v) { return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
    if (palette == "gray") return {byte(u), byte(u), byte(u)};
    if (palette == "heat") {
        // black -> red -> yellow -> white
        const double r = std::min(1.0, 3.0 * u);
        const double g = std::clamp(3.0 * u - 1.0, 0.0, 1.0);
        const double b = std::clamp(3.0 * u - 2.0, 0.0, 1.0);
        return {byte(r), byte(g), byte(b)};
    }
    if (palette == "jet") {
        auto ramp = [](double v) { return std::clamp(1.5 - std::abs(v), 0.0, 1.0); };
        return {byte(ramp(4.0 * u - 3.0)), byte(ramp(4.0 * u - 2.0)), byte(ramp(4.0 * u - 1.0))};
    }
    throw std::invalid_argument("unknown palette '" + palette + "' (use gray, jet or heat)");
}

}  // namespace

std::string rasterize(const CoverageGrid& grid, const std::string& palette, double db_min,
                      double db_max) {
    if (!(db_min < db_max)) throw std::invalid_argument("dB range must satisfy min < max");
    const int nx = grid.spec.nx();
    const int ny = grid.spec.ny();
    std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    out.reserve(out.size() + static_cast<size_t>(nx) * static_cast<size_t>(ny) * 3);
    // image rows top to bottom = grid rows last to first
    for (int iy = ny - 1; iy >= 0; --iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double v = grid.at(ix, iy);
            Rgb c{0, 0, 0};  // marker cells are black
            if (std::isfinite(v)) c = palette_color(palette, (v - db_min) / (db_max - db_min));
            out.push_back(static_cast<char>(c.r));
            out.push_back(static_cast<char>(c.g));
            out.push_back(static_cast<char>(c.b));
        }
    return out;
}

std::string coverage_to_csv(const CoverageGrid& grid) {
    std::string csv = "cell_x,cell_y,world_x,world_y,world_z,power_dbm\n";
    const int nx = grid.spec.nx();
    const int ny = grid.spec.ny();
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const Vec3 p = grid.spec.cell_center(ix, iy);
            const double v = grid.at(ix, iy);
            csv += std::to_string(ix) + "," + std::to_string(iy) + "," + format_double(p.x) + "," +
                   format_double(p.y) + "," + format_double(p.z) + "," +
                   (std::isfinite(v) ? format_double(v) : std::string("-inf")) + "\n";
        }
    return csv;
}

}  // namespace emtrace
