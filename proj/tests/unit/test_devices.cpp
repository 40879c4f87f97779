// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emtrace/devices.hpp"

using namespace emtrace;

namespace {
constexpr double kPi = std::numbers::pi;

RisPanel make_panel(int rows, int cols, double pitch) {
    RisPanel p;
    p.id = "ris";
    p.rows = rows;
    p.cols = cols;
    p.pitch = pitch;
    p.center = {0, 0, 0};
    p.frame = Mat3::identity();  // panel in the xy-plane, normal +z
    return p;
}

}  // namespace

TEST_CASE("array response closed forms") {
    const double lambda = 0.1;
    AntennaArray single{1, 1, 0.05, 0.05, Mat3::identity()};
    const auto one = array_response(single, {0.3, -0.2}, lambda);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0] - Complex{1.0, 0.0}) < 1e-15);

    // two elements stacked along z at lambda/2
    AntennaArray pair{2, 1, lambda / 2.0, lambda / 2.0, Mat3::identity()};
    // broadside: wave along +x has no path difference
    const auto broadside = array_response(pair, {0.0, 0.0}, lambda);
    CHECK(std::abs(broadside[0] - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(broadside[1] - Complex{1.0, 0.0}) < 1e-12);
    // endfire: wave along +z sees a half-wavelength offset -> phase pi
    const auto endfire = array_response(pair, {0.0, kPi / 2.0}, lambda);
    CHECK(std::abs(endfire[0] - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(endfire[1] - std::polar(1.0, kPi)) < 1e-9);
}

TEST_CASE("array response norm equals the element count") {
    AntennaArray arr{4, 3, 0.021, 0.034, Mat3::rotation_z(0.7) * Mat3::rotation_y(-0.3)};
    for (double az : {-2.0, 0.0, 1.1})
        for (double el : {-1.2, 0.0, 0.9}) {
            const auto a = array_response(arr, {az, el}, 0.086);
            double norm_sq = 0.0;
            for (const Complex& v : a) norm_sq += std::norm(v);
            CHECK(norm_sq == doctest::Approx(12.0).epsilon(1e-12));
        }
}

TEST_CASE("doppler closed forms") {
    const double lambda = 0.1;
    // both static
    CHECK(doppler_shift({1, 0, 0}, {1, 0, 0}, {}, {}, lambda) == 0.0);
    // rx approaching the tx head-on at 3 m/s: +30 Hz
    const Vec3 prop{1, 0, 0};
    CHECK(doppler_shift(prop, prop, {}, {-3, 0, 0}, lambda) == doctest::Approx(30.0));
    // perpendicular motion
    CHECK(doppler_shift(prop, prop, {}, {0, 4, 0}, lambda) == doctest::Approx(0.0));
}

TEST_CASE("doppler symmetry laws") {
    const double lambda = 0.03;
    const Vec3 v_tx{1.0, -2.0, 0.3};
    const Vec3 v_rx{-0.4, 0.7, 1.1};

    // swapping the endpoint velocities on a fixed path negates the shift
    const Vec3 k = normalized(Vec3{1, 2, 0.5});
    const double fwd = doppler_shift(k, k, v_tx, v_rx, lambda);
    const double swapped = doppler_shift(k, k, v_rx, v_tx, lambda);
    CHECK(fwd == doctest::Approx(-swapped).epsilon(1e-12));

    // traversing the path backwards with swapped roles reproduces the shift
    const Vec3 k_dep = normalized(Vec3{1, 2, 0.5});
    const Vec3 k_arr = normalized(Vec3{0.8, 1.9, 0.6});
    const double ab = doppler_shift(k_dep, k_arr, v_tx, v_rx, lambda);
    const double ba = doppler_shift(-k_arr, -k_dep, v_rx, v_tx, lambda);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
}

TEST_CASE("dbm conversions") {
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
    CHECK(watts_to_dbm(1.0) == doctest::Approx(30.0));
}

TEST_CASE("single-beam profile closed forms") {
    const double lambda = 0.1;
    // broadside target: zero phase everywhere
    RisPanel p = make_panel(4, 4, lambda / 2.0);
    const auto zero = ris_single_beam_profile(p, 0.0, 0.0, lambda);
    for (double phi : zero) CHECK(std::abs(phi) < 1e-12);

    // element at x = lambda/2: phase -pi (stored wrapped; e^{j phi} must match)
    RisPanel line = make_panel(1, 5, lambda / 2.0);  // offsets -lambda..lambda along x
    const auto prof = ris_single_beam_profile(line, kPi / 2.0, 0.0, lambda);
    const int idx = 3;  // column 3 sits at +lambda/2
    CHECK(line.local_offset(0, idx).x == doctest::Approx(lambda / 2.0));
    CHECK(std::cos(prof[idx]) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(std::sin(prof[idx])) < 1e-12);
}

TEST_CASE("single-beam profile steers the array factor to the target") {
    const double lambda = 0.0857;
    RisPanel p = make_panel(8, 8, lambda / 2.0);
    const double theta0 = 0.6, phi0 = 1.1;
    p.phase_profile = ris_single_beam_profile(p, theta0, phi0, lambda);

    // coherent sum at the target equals the element count
    const Complex at_target = ris_array_factor(p, p.phase_profile, theta0, phi0, lambda);
    CHECK(std::abs(at_target) == doctest::Approx(64.0).epsilon(1e-9));

    // argmax over a coarse grid lands on the target cell
    double best = -1.0, best_theta = 0, best_phi = 0;
    for (double th = 0.0; th <= kPi / 2.0 + 1e-9; th += kPi / 180.0)
        for (double ph = 0.0; ph < 2.0 * kPi; ph += kPi / 90.0) {
            const double mag = std::abs(ris_array_factor(p, p.phase_profile, th, ph, lambda));
            if (mag > best) {
                best = mag;
                best_theta = th;
                best_phi = ph;
            }
        }
    CHECK(std::abs(best_theta - theta0) < kPi / 90.0);
    CHECK(std::abs(best_phi - phi0) < kPi / 45.0);
}

TEST_CASE("multibeam optimizer: monotone objective and single-target parity") {
    const double lambda = 0.0857;
    RisPanel p = make_panel(8, 8, lambda / 2.0);
    const RisBeamTarget target{0.5, 0.8, 1.0, -1.0};
    const auto result = ris_multibeam_optimize(p, std::vector<RisBeamTarget>{target}, lambda, 50, 1e-3, 1);
    for (size_t i = 1; i < result.objective_history.size(); ++i)
        CHECK(result.objective_history[i] <= result.objective_history[i - 1] + 1e-12);

    const double optimized = std::abs(ris_array_factor(p, result.phases, 0.5, 0.8, lambda));
    const auto reference = ris_single_beam_profile(p, 0.5, 0.8, lambda);
    const double analytic = std::abs(ris_array_factor(p, reference, 0.5, 0.8, lambda));
    CHECK(optimized >= 0.98 * analytic);
}

TEST_CASE("multibeam optimizer splits power across two symmetric targets") {
    const double lambda = 0.0857;
    RisPanel p = make_panel(16, 16, lambda / 2.0);
    std::vector<RisBeamTarget> targets = {{0.5, 0.0, 1.0, -1.0}, {0.5, kPi, 1.0, -1.0}};
    const auto result = ris_multibeam_optimize(p, targets, lambda, 100, 1e-3, 1);
    const double n = p.size();
    CHECK(std::abs(ris_array_factor(p, result.phases, 0.5, 0.0, lambda)) >= 0.4 * n);
    CHECK(std::abs(ris_array_factor(p, result.phases, 0.5, kPi, lambda)) >= 0.4 * n);
}

TEST_CASE("multibeam optimizer guards") {
    RisPanel p = make_panel(2, 2, 0.05);
    const RisBeamTarget t{0.3, 0.0, 1.0, -1.0};
    CHECK_THROWS_AS(ris_multibeam_optimize(p, std::vector<RisBeamTarget>{t}, 0.1, 0, 1e-3, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ris_multibeam_optimize(p, {}, 0.1, 10, 1e-3, 1), std::invalid_argument);
}

TEST_CASE("multibeam optimizer is deterministic for a fixed seed") {
    const double lambda = 0.0857;
    RisPanel p = make_panel(4, 4, lambda / 2.0);
    std::vector<RisBeamTarget> targets = {{0.4, 0.3, 1.0, -1.0}, {0.9, 2.0, 0.7, -1.0}};
    const auto a = ris_multibeam_optimize(p, targets, lambda, 40, 1e-3, 42);
    const auto b = ris_multibeam_optimize(p, targets, lambda, 40, 1e-3, 42);
    REQUIRE(a.phases.size() == b.phases.size());
    for (size_t i = 0; i < a.phases.size(); ++i) CHECK(a.phases[i] == b.phases[i]);
}

TEST_CASE("apply_ris_to_path closed forms") {
    const double lambda = 0.1;
    RisPanel p = make_panel(4, 4, lambda / 2.0);
    p.phase_profile.assign(static_cast<size_t>(p.size()), 0.0);

    // normal in, normal out, uniform phases: coherent unity
    const Complex head_on = apply_ris_to_path(p, {0, 0, -1}, {0, 0, 1}, lambda);
    CHECK(std::abs(head_on) == doctest::Approx(1.0).epsilon(1e-12));

    // back-side illumination and back-side departure give zero
    CHECK(std::abs(apply_ris_to_path(p, {0, 0, 1}, {0, 0, 1}, lambda)) == 0.0);
    CHECK(std::abs(apply_ris_to_path(p, {0, 0, -1}, {0, 0, -1}, lambda)) == 0.0);

    // single element panel re-radiates isotropically
    RisPanel single = make_panel(1, 1, lambda / 2.0);
    single.phase_profile = {0.0};
    const Complex iso = apply_ris_to_path(single, {0, 0, -1}, normalized(Vec3{0.3, 0.4, 0.85}), lambda);
    CHECK(std::abs(iso) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("steered panel strongly favors the commanded direction") {
    const double lambda = 0.1;
    RisPanel p = make_panel(32, 32, lambda / 2.0);
    const double theta0 = kPi / 6.0;  // 30 degrees
    p.phase_profile = ris_single_beam_profile(p, theta0, 0.0, lambda);

    const Vec3 incident{0, 0, -1};
    const Vec3 toward = {std::sin(theta0), 0.0, std::cos(theta0)};
    const Vec3 mirror = {-std::sin(theta0), 0.0, std::cos(theta0)};
    const double on = std::abs(apply_ris_to_path(p, incident, toward, lambda));
    const double off = std::abs(apply_ris_to_path(p, incident, mirror, lambda));
    CHECK(on >= 100.0 * off);
}
