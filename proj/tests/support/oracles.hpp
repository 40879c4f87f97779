// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors
//
// Independent oracles: image-source enumeration for rectangular rooms, a
// standalone polarized specular-chain evaluator working on complex 3-vector
// fields (deliberately unlike the tracer's 2x2 Jones bookkeeping), Friis and
// two-ray references.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "emtrace/vec3.hpp"

namespace emtrace::test {

using Complex = std::complex<double>;
constexpr double kC0 = 299792458.0;

struct CVec3 {
    Complex x{0.0}, y{0.0}, z{0.0};
};

inline CVec3 cmul(const Vec3& v, Complex s) { return {v.x * s, v.y * s, v.z * s}; }
inline CVec3 cadd(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Complex cdot(const CVec3& e, const Vec3& v) { return e.x * v.x + e.y * v.y + e.z * v.z; }

inline Vec3 oracle_theta_hat(const Vec3& u) {
    const double st = std::hypot(u.x, u.y);
    if (st < 1e-12) return {u.z >= 0.0 ? 1.0 : -1.0, 0.0, 0.0};
    return {u.z * u.x / st, u.z * u.y / st, -st};
}

inline Complex oracle_gamma_perp(double cos_i, Complex n2) {
    const Complex sin_t2 = (1.0 - cos_i * cos_i) / (n2 * n2);
    Complex cos_t = std::sqrt(1.0 - sin_t2);
    if (cos_t.imag() > 0.0) cos_t = -cos_t;
    return (cos_i - n2 * cos_t) / (cos_i + n2 * cos_t);
}

inline Complex oracle_gamma_par(double cos_i, Complex n2) {
    const Complex sin_t2 = (1.0 - cos_i * cos_i) / (n2 * n2);
    Complex cos_t = std::sqrt(1.0 - sin_t2);
    if (cos_t.imag() > 0.0) cos_t = -cos_t;
    return (n2 * cos_i - cos_t) / (n2 * cos_i + cos_t);
}

struct OraclePath {
    double delay;
    Complex gain;  // vertical -> vertical transfer, Friis anchored
    int order;
    std::vector<Vec3> points;  // tx, reflection points..., rx
};

/// Complex field walk along a fixed polyline of specular reflections in air
/// against surfaces of refractive index n2 (first medium vacuum). Vertical
/// polarization on both ends.
inline Complex polyline_specular_gain(const std::vector<Vec3>& points,
                                      const std::vector<Vec3>& plane_normals, Complex n2,
                                      double wavelength) {
    const size_t m = plane_normals.size();
    double total = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) total += norm(points[i + 1] - points[i]);

    Vec3 dir = normalized(points[1] - points[0]);
    CVec3 field = cmul(oracle_theta_hat(dir), Complex{1.0, 0.0});
    for (size_t j = 0; j < m; ++j) {
        Vec3 n = plane_normals[j];
        if (dot(n, dir) > 0.0) n = -n;
        const double cos_i = std::clamp(-dot(dir, n), 0.0, 1.0);
        Vec3 s = cross(dir, n);
        if (norm(s) < 1e-9) s = any_orthonormal(dir);
        else s = normalized(s);
        const Vec3 p_in = cross(s, dir);
        const Vec3 dir_out = reflect(dir, n);
        const Vec3 p_out = cross(s, dir_out);
        const Complex a = cdot(field, s);
        const Complex b = cdot(field, p_in);
        field = cadd(cmul(s, oracle_gamma_perp(cos_i, n2) * a),
                     cmul(p_out, oracle_gamma_par(cos_i, n2) * b));
        dir = dir_out;
    }
    const Complex v_component = cdot(field, oracle_theta_hat(-dir));
    const double k = 2.0 * std::numbers::pi / wavelength;
    return (wavelength / (4.0 * std::numbers::pi)) * std::polar(1.0, -k * total) / total * v_component;
}

/// Exhaustive image-source enumeration for the axis-aligned room
/// [0,w]x[0,d]x[0,h]: all reflection sequences up to `max_order` with no
/// immediate repetition, validated by back-tracing (plane crossings within
/// the segment, reflection points inside the finite faces).
inline std::vector<OraclePath> image_source_paths(double w, double d, double h, const Vec3& tx,
                                                  const Vec3& rx, int max_order, Complex wall_n2,
                                                  double wavelength) {
    struct Wall {
        Vec3 point, normal;
        int axis;
        double lo1, hi1, lo2, hi2;  // in-face bounds over the other two axes
        int a1, a2;
    };
    const std::vector<Wall> walls = {
        {{0, 0, 0}, {1, 0, 0}, 0, 0, d, 0, h, 1, 2},  {{w, 0, 0}, {-1, 0, 0}, 0, 0, d, 0, h, 1, 2},
        {{0, 0, 0}, {0, 1, 0}, 1, 0, w, 0, h, 0, 2},  {{0, d, 0}, {0, -1, 0}, 1, 0, w, 0, h, 0, 2},
        {{0, 0, 0}, {0, 0, 1}, 2, 0, w, 0, d, 0, 1},  {{0, 0, h}, {0, 0, -1}, 2, 0, w, 0, d, 0, 1}};

    std::vector<OraclePath> out;
    // direct path
    {
        OraclePath p;
        p.order = 0;
        p.points = {tx, rx};
        p.delay = norm(rx - tx) / kC0;
        p.gain = polyline_specular_gain(p.points, {}, wall_n2, wavelength);
        out.push_back(std::move(p));
    }

    std::vector<int> seq;
    auto backtrace = [&](const std::vector<int>& sequence) {
        std::vector<Vec3> images{tx};
        for (int wi : sequence)
            images.push_back(mirror_point(images.back(), walls[static_cast<size_t>(wi)].point,
                                          walls[static_cast<size_t>(wi)].normal));
        std::vector<Vec3> pts(sequence.size());
        Vec3 cur = rx;
        for (size_t j = sequence.size(); j-- > 0;) {
            const Wall& wall = walls[static_cast<size_t>(sequence[j])];
            const Vec3 img = images[j + 1];
            const Vec3 seg = img - cur;
            const double denom = dot(seg, wall.normal);
            if (std::abs(denom) < 1e-15) return false;
            const double t = dot(wall.point - cur, wall.normal) / denom;
            if (!(t > 1e-9 && t < 1.0 - 1e-9)) return false;
            cur = cur + seg * t;
            const double c1 = cur[wall.a1];
            const double c2 = cur[wall.a2];
            if (!(c1 > wall.lo1 + 1e-9 && c1 < wall.hi1 - 1e-9)) return false;
            if (!(c2 > wall.lo2 + 1e-9 && c2 < wall.hi2 - 1e-9)) return false;
            pts[j] = cur;
        }
        OraclePath p;
        p.order = static_cast<int>(sequence.size());
        p.points.push_back(tx);
        for (const Vec3& q : pts) p.points.push_back(q);
        p.points.push_back(rx);
        double total = 0.0;
        for (size_t i = 0; i + 1 < p.points.size(); ++i) total += norm(p.points[i + 1] - p.points[i]);
        p.delay = total / kC0;
        std::vector<Vec3> normals;
        for (int wi : sequence) normals.push_back(walls[static_cast<size_t>(wi)].normal);
        p.gain = polyline_specular_gain(p.points, normals, wall_n2, wavelength);
        out.push_back(std::move(p));
        return true;
    };

    std::function<void(int)> recurse = [&](int depth) {
        if (depth > 0) backtrace(seq);
        if (depth == max_order) return;
        for (int wi = 0; wi < 6; ++wi) {
            if (!seq.empty() && seq.back() == wi) continue;
            seq.push_back(wi);
            recurse(depth + 1);
            seq.pop_back();
        }
    };
    recurse(0);
    return out;
}

inline Complex oracle_t_perp(double cos_i, Complex n2) { return 1.0 + oracle_gamma_perp(cos_i, n2); }
inline Complex oracle_t_par(double cos_i, Complex n2) {
    return (1.0 + oracle_gamma_par(cos_i, n2)) / n2;
}

/// Exact per-event powers for a path inside (or leaving) the axis-aligned
/// room [0,w]x[0,d]x[0,h] whose walls all carry refractive index n2. The
/// polyline is tx, event points..., rx; kinds: 0 = reflection,
/// 1 = transmission. Surface normals are recovered from the wall planes.
inline std::vector<double> box_event_powers(double w, double d, double h, double tx_power,
                                            Complex n2, double wavelength,
                                            const std::vector<Vec3>& pts,
                                            const std::vector<int>& kinds) {
    const Vec3 dims{w, d, h};
    std::vector<double> powers;
    Vec3 dir = normalized(pts[1] - pts[0]);
    CVec3 field = cmul(oracle_theta_hat(dir), Complex{1.0, 0.0});
    double length = 0.0;
    const double aperture = wavelength / (4.0 * std::numbers::pi);
    for (size_t e = 0; e + 2 < pts.size(); ++e) {  // pts = tx, events..., rx
        const Vec3 q = pts[e + 1];
        length += norm(q - pts[e]);
        // identify the wall plane at q
        Vec3 n{0, 0, 0};
        for (int a = 0; a < 3; ++a) {
            if (std::abs(q[a]) < 1e-6) n[a] = 1.0;
            if (std::abs(q[a] - dims[a]) < 1e-6) n[a] = -1.0;
        }
        if (dot(n, dir) > 0.0) n = -n;
        const double cos_i = std::clamp(-dot(dir, n), 0.0, 1.0);
        Vec3 s = cross(dir, n);
        if (norm(s) < 1e-9) s = any_orthonormal(dir);
        else s = normalized(s);
        const Vec3 p_in = cross(s, dir);
        const Complex a_amp = cdot(field, s);
        const Complex b_amp = cdot(field, p_in);
        if (kinds[e] == 0) {
            const Vec3 dir_out = reflect(dir, n);
            const Vec3 p_out = cross(s, dir_out);
            field = cadd(cmul(s, oracle_gamma_perp(cos_i, n2) * a_amp),
                         cmul(p_out, oracle_gamma_par(cos_i, n2) * b_amp));
            dir = dir_out;
        } else {
            field = cadd(cmul(s, oracle_t_perp(cos_i, n2) * a_amp),
                         cmul(p_in, oracle_t_par(cos_i, n2) * b_amp));
        }
        const double norm_sq =
            std::norm(field.x) + std::norm(field.y) + std::norm(field.z);
        powers.push_back(tx_power * aperture * aperture * norm_sq / (length * length));
    }
    return powers;
}

/// Friis free-space path loss in dB.
inline double friis_db(double distance, double wavelength) {
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance / wavelength);
}

/// Classic coherent two-ray received power (vertical polarization) relative
/// to 1 W transmit power, using the supplied parallel reflection coefficient.
inline double two_ray_power(double distance, double h_tx, double h_rx, Complex n2,
                            double wavelength) {
    const double l1 = std::hypot(distance, h_tx - h_rx);
    const double l2 = std::hypot(distance, h_tx + h_rx);
    const double cos_i = (h_tx + h_rx) / l2;  // angle from the ground normal
    const Complex gamma = oracle_gamma_par(cos_i, n2);
    const double k = 2.0 * std::numbers::pi / wavelength;
    const Complex field = std::polar(1.0, -k * l1) / l1 + gamma * std::polar(1.0, -k * l2) / l2;
    const double a = wavelength / (4.0 * std::numbers::pi);
    return a * a * std::norm(field);
}

}  // namespace emtrace::test
