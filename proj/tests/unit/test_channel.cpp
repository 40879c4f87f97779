// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "emtrace/channel.hpp"
#include "emtrace/material.hpp"
#include "../support/oracles.hpp"

using namespace emtrace;

namespace {
constexpr double kPi = std::numbers::pi;

PathRecord simple_path(Complex gain, double delay, Direction aod = {}, Direction aoa = {}) {
    PathRecord p;
    p.gain = gain;
    p.delay = delay;
    p.aod = aod;
    p.aoa = aoa;
    return p;
}

AntennaArray siso() { return {1, 1, 0.05, 0.05, Mat3::identity()}; }

}  // namespace

TEST_CASE("single unit path gives a single unit tap at index zero") {
    const auto taps = assemble_cir(std::vector<PathRecord>{simple_path({1.0, 0.0}, 0.0)}, siso(),
                                   siso(), 0.1, 100e6);
    REQUIRE(taps.size() == 1);
    CHECK(taps[0].index == 0);
    CHECK(std::abs(taps[0].h[0] - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("delay separation of 3/B lands exactly three taps apart") {
    const double b = 50e6;
    std::vector<PathRecord> paths{simple_path({0.5, 0.0}, 1.0 / b),
                                  simple_path({0.5, 0.0}, 4.0 / b)};
    const auto taps = assemble_cir(paths, siso(), siso(), 0.1, b);
    REQUIRE(taps.size() == 2);
    CHECK(taps[1].index - taps[0].index == 3);
}

TEST_CASE("same-bin contributions sum coherently") {
    const double b = 1e6;
    std::vector<PathRecord> paths{simple_path({0.5, 0.0}, 1e-9), simple_path({0.25, 0.0}, 2e-9)};
    const auto taps = assemble_cir(paths, siso(), siso(), 0.1, b);
    REQUIRE(taps.size() == 1);
    CHECK(taps[0].h[0].real() == doctest::Approx(0.75));
}

TEST_CASE("per-path tap matrices are rank one") {
    AntennaArray tx_arr{2, 2, 0.043, 0.043, Mat3::identity()};
    AntennaArray rx_arr{4, 1, 0.043, 0.043, Mat3::identity()};
    const auto taps = assemble_cir(
        std::vector<PathRecord>{simple_path({0.3, 0.4}, 5e-8, {0.4, 0.2}, {-1.0, 0.5})}, tx_arr,
        rx_arr, 0.086, 20e6);
    REQUIRE(taps.size() == 1);
    const auto& h = taps[0].h;  // 4 rows (rx), 4 cols (tx)
    // frobenius vs spectral: power iteration for sigma_1
    const int nr = 4, nt = 4;
    std::vector<Complex> v(static_cast<size_t>(nt), Complex{0.5, 0.0});
    for (int it = 0; it < 200; ++it) {
        std::vector<Complex> hv(static_cast<size_t>(nr), {0, 0});
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nt; ++c) hv[static_cast<size_t>(r)] += h[static_cast<size_t>(r * nt + c)] * v[static_cast<size_t>(c)];
        std::vector<Complex> hthv(static_cast<size_t>(nt), {0, 0});
        for (int c = 0; c < nt; ++c)
            for (int r = 0; r < nr; ++r)
                hthv[static_cast<size_t>(c)] += std::conj(h[static_cast<size_t>(r * nt + c)]) * hv[static_cast<size_t>(r)];
        double nrm = 0;
        for (const Complex& x : hthv) nrm += std::norm(x);
        nrm = std::sqrt(std::sqrt(nrm));
        for (Complex& x : hthv) x /= nrm * nrm;
        v = hthv;
    }
    double sigma1_sq = 0.0, vnorm = 0.0;
    {
        std::vector<Complex> hv(static_cast<size_t>(nr), {0, 0});
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nt; ++c) hv[static_cast<size_t>(r)] += h[static_cast<size_t>(r * nt + c)] * v[static_cast<size_t>(c)];
        for (const Complex& x : hv) sigma1_sq += std::norm(x);
        for (const Complex& x : v) vnorm += std::norm(x);
        sigma1_sq /= vnorm;
    }
    double frob_sq = 0.0;
    for (const Complex& x : h) frob_sq += std::norm(x);
    // rank 1: remaining spectral mass is numerically zero
    CHECK(std::sqrt(std::abs(frob_sq - sigma1_sq)) < 1e-9 * std::sqrt(sigma1_sq));
}

TEST_CASE("energy bookkeeping with distinct bins") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const double b = 100e6;
    std::vector<PathRecord> paths;
    double sum_energy = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Complex g{u(rng), u(rng) - 0.5};
        paths.push_back(simple_path(g, (i * 7 + 1) / b));
        sum_energy += std::norm(g);
    }
    const auto taps = assemble_cir(paths, siso(), siso(), 0.1, b);
    double tap_energy = 0.0;
    for (const CirTap& t : taps) tap_energy += std::norm(t.h[0]);
    CHECK(tap_energy == doctest::Approx(sum_energy).epsilon(1e-12));
}

TEST_CASE("single-path CFR is flat with magnitude |gain|") {
    const auto grid = default_freq_grid(100e6, 33);
    const auto cfr = evaluate_cfr(std::vector<PathRecord>{simple_path({0.3, -0.4}, 7e-9)}, siso(),
                                  siso(), 0.1, grid);
    for (const Complex& v : cfr) CHECK(std::abs(v) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("two equal paths produce the first spectral null at 1/(2 dtau)") {
    const double dtau = 10e-9;
    std::vector<PathRecord> paths{simple_path({0.5, 0.0}, 0.0), simple_path({0.5, 0.0}, dtau)};
    const double null_freq = 1.0 / (2.0 * dtau);
    const std::vector<double> grid{0.0, null_freq / 2.0, null_freq};
    const auto cfr = evaluate_cfr(paths, siso(), siso(), 0.1, grid);
    CHECK(std::abs(cfr[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(cfr[2]) < 1e-12);
}

TEST_CASE("oversampled tap DFT matches the exact CFR within one percent") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double b = 100e6;
    const double over = 16.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<PathRecord> paths;
        for (int l = 0; l < 20; ++l) {
            // delays drawn on the oversampled lattice so binning is exact
            const int lattice = static_cast<int>(std::floor(u(rng) * 1600.0));
            const double delay = lattice / (over * b);
            const Complex gain = std::polar(0.2 + u(rng), 2.0 * kPi * u(rng));
            paths.push_back(simple_path(gain, delay));
        }
        const auto taps = assemble_cir(paths, siso(), siso(), 0.1, over * b);
        const auto grid = default_freq_grid(b, 64);
        const auto exact = evaluate_cfr(paths, siso(), siso(), 0.1, grid);

        double err_sq = 0.0, ref_sq = 0.0;
        for (size_t fi = 0; fi < grid.size(); ++fi) {
            Complex dft{0.0, 0.0};
            for (const CirTap& tap : taps)
                dft += tap.h[0] * std::polar(1.0, -2.0 * kPi * grid[fi] * (tap.index / (over * b)));
            err_sq += std::norm(dft - exact[fi]);
            ref_sq += std::norm(exact[fi]);
        }
        CHECK(std::sqrt(err_sq / ref_sq) < 0.01);
    }
}

TEST_CASE("CFR of real-gain paths has Hermitian symmetry") {
    std::vector<PathRecord> paths{simple_path({0.7, 0.0}, 3e-9), simple_path({-0.2, 0.0}, 11e-9)};
    const auto grid = default_freq_grid(50e6, 21);  // symmetric grid
    const auto cfr = evaluate_cfr(paths, siso(), siso(), 0.1, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const Complex a = cfr[i];
        const Complex b = cfr[grid.size() - 1 - i];
        CHECK(std::abs(a - std::conj(b)) < 1e-12);
    }
}

TEST_CASE("path metrics reproduce Friis and drop zero-gain paths") {
    const double lambda = 0.0857;
    auto friis_gain = [&](double d) { return Complex{lambda / (4.0 * kPi * d), 0.0}; };
    std::vector<PathRecord> paths{
        simple_path(friis_gain(1.0), 1.0 / kSpeedOfLight),
        simple_path(friis_gain(2.0), 2.0 / kSpeedOfLight),
        simple_path(friis_gain(lambda / (4.0 * kPi)), 1e-11),
        simple_path({0.0, 0.0}, 1e-9),
    };
    int warnings = 0;
    const auto metrics = path_metrics(paths, [&](const std::string&) { ++warnings; });
    REQUIRE(metrics.size() == 3);
    CHECK(warnings == 1);
    CHECK(metrics[0].path_loss_db == doctest::Approx(test::friis_db(1.0, lambda)).epsilon(1e-12));
    // doubled distance adds 20 log10(2) dB
    CHECK(metrics[1].path_loss_db - metrics[0].path_loss_db ==
          doctest::Approx(6.020599913279624).epsilon(1e-9));
    // d = lambda / (4 pi) crosses zero loss
    CHECK(metrics[2].path_loss_db == doctest::Approx(0.0).epsilon(1e-9));
}
