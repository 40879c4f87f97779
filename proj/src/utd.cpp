// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/utd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emtrace {

namespace {

constexpr double kPi = std::numbers::pi;

// Mielenz, "Computation of Fresnel Integrals II", J. Res. NIST 105, 589 (2000).
constexpr double kFn[12] = {0.318309844, 9.34626e-8, -0.09676631, 0.000606222,
                            0.325539361, 0.325206461, -7.450551455, 32.20380908,
                            -78.8035274, 118.5343352, -102.4339798, 39.06207702};
constexpr double kGn[12] = {0.0, 0.101321519, -4.07292e-5, -0.152068115,
                            -0.046292605, 1.622793598, -5.199186089, 7.477942354,
                            -0.695291507, -15.10996796, 22.28401942, -10.89968491};
constexpr double kCn[12] = {1.0, -0.24674011002723, 0.02818550087789, -0.00160488313564,
                            5.407413381408390e-05, -1.200097255860028e-06, 1.884349911527268e-08,
                            -2.202276925445466e-10, 1.989685792418021e-12, -1.430918973171519e-14,
                            8.384729705118549e-17, -4.079981449233875e-19};
constexpr double kSn[12] = {0.52359877559830, -0.09228058535804, 0.00724478420420,
                            -3.121169423545791e-04, 8.444272883545251e-06, -1.564714450092211e-07,
                            2.108212193321454e-09, -2.157430680584343e-11, 1.733410208887483e-13,
                            -1.122324478798395e-15, 5.980053239210401e-18, -2.667871362841397e-20};

}  // namespace

std::pair<double, double> fresnel_integrals(double x0) {
    const double x = std::abs(x0);
    double fc = 0.0, fs = 0.0;
    if (x <= 1.6) {
        const double x4 = x * x * x * x;
        double pc = x;          // x^(4n+1)
        double ps = x * x * x;  // x^(4n+3)
        for (int n = 0; n < 12; ++n) {
            fc += kCn[n] * pc;
            fs += kSn[n] * ps;
            pc *= x4;
            ps *= x4;
        }
    } else {
        double fx = 0.0, gx = 0.0;
        double xpow = 1.0 / x;  // x^(-2n-1)
        const double inv_x2 = 1.0 / (x * x);
        for (int n = 0; n < 12; ++n) {
            fx += kFn[n] * xpow;
            gx += kGn[n] * xpow;
            xpow *= inv_x2;
        }
        const double arg = 0.5 * kPi * x * x;
        fc = 0.5 + fx * std::sin(arg) - gx * std::cos(arg);
        fs = 0.5 - gx * std::sin(arg) - fx * std::cos(arg);
    }
    if (x0 < 0.0) {
        fc = -fc;
        fs = -fs;
    }
    return {fc, fs};
}

Complex transition_function(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("transition function argument must be >= 0");
    if (x == 0.0) return {0.0, 0.0};
    const double sqrt_x = std::sqrt(x);
    // int_{sqrt(x)}^inf e^{-j t^2} dt via the standard Fresnel integrals
    const auto [fc, fs] = fresnel_integrals(sqrt_x * std::sqrt(2.0 / kPi));
    const Complex tail = std::sqrt(kPi / 2.0) * Complex(0.5 - fc, -(0.5 - fs));
    return 2.0 * Complex(0.0, 1.0) * sqrt_x * std::polar(1.0, x) * tail;
}

double WedgeGeometry::angle_parameter() const { return (2.0 * kPi - interior_angle) / kPi; }

namespace {

// cot((pi + sign*beta)/(2n)) * F(kL * a), with the Kouyoumjian-Pathak
// grazing limit when beta sits within eps of the term's shadow/reflection
// boundary (the cot pole and the F zero cancel to a finite value there).
Complex kp_term(double beta, double sign, double n, double k_l) {
    double big_n, eps;
    if (sign > 0.0) {
        big_n = std::round((kPi + beta) / (2.0 * kPi * n));
        eps = beta - (2.0 * kPi * n * big_n - kPi);
    } else {
        big_n = std::round((beta - kPi) / (2.0 * kPi * n));
        eps = beta - (2.0 * kPi * n * big_n + kPi);
    }
    if (std::abs(eps) < 1e-4) {
        const Complex e4 = std::polar(1.0, kPi / 4.0);
        const Complex limit =
            n * e4 * (std::sqrt(2.0 * kPi * k_l) * (eps >= 0.0 ? 1.0 : -1.0) - 2.0 * k_l * eps * e4);
        return sign > 0.0 ? limit : -limit;
    }
    const double a = 2.0 * std::cos((2.0 * kPi * n * big_n - beta) / 2.0) *
                     std::cos((2.0 * kPi * n * big_n - beta) / 2.0);
    const double cot_arg = (kPi + sign * beta) / (2.0 * n);
    const double cot = std::cos(cot_arg) / std::sin(cot_arg);
    return cot * transition_function(k_l * a);
}

}  // namespace

DiffractionCoeff utd_diffraction_coeff(const WedgeGeometry& wedge, const Vec3& incident_prop,
                                       const Vec3& diffracted_prop, double s_incident,
                                       double s_diffracted, double wavelength) {
    if (!(wedge.interior_angle >= 0.0 && wedge.interior_angle < 2.0 * kPi))
        throw std::invalid_argument("wedge interior angle must lie in [0, 2*pi)");
    if (!(s_incident > 0.0 && s_diffracted > 0.0))
        throw std::invalid_argument("diffraction distances must be > 0");
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");

    const double n = wedge.angle_parameter();
    const Vec3 e = wedge.edge_dir;
    const Vec3 u0 = wedge.face_o_dir;
    const Vec3 w = cross(e, u0);

    const double cos_beta_inc = dot(incident_prop, e);
    const double cos_beta_dif = dot(diffracted_prop, e);
    const double beta0 = std::acos(std::clamp(cos_beta_inc, -1.0, 1.0));
    const double beta_d = std::acos(std::clamp(cos_beta_dif, -1.0, 1.0));
    if (std::abs(beta_d - beta0) > 1e-6)
        throw std::invalid_argument("diffracted direction is off the Keller cone");
    const double sin_beta = std::sin(beta0);
    if (sin_beta < 1e-9) throw std::invalid_argument("ray is parallel to the edge");

    auto face_angle = [&](const Vec3& v) {
        const Vec3 p = v - dot(v, e) * e;
        double ang = std::atan2(dot(p, w), dot(p, u0));
        if (ang < 0.0) ang += 2.0 * kPi;
        return ang;
    };
    const double phi_inc = face_angle(-incident_prop);  // from edge toward the source
    const double phi_dif = face_angle(diffracted_prop);
    if (phi_inc > n * kPi + 1e-9 || phi_dif > n * kPi + 1e-9)
        throw std::invalid_argument("direction lies inside the wedge material");

    const double k = 2.0 * kPi / wavelength;
    const double big_l = s_incident * s_diffracted / (s_incident + s_diffracted) * sin_beta * sin_beta;
    const double k_l = k * big_l;

    const double diff = phi_dif - phi_inc;
    const double sum = phi_dif + phi_inc;
    const Complex incident_part = kp_term(diff, +1.0, n, k_l) + kp_term(diff, -1.0, n, k_l);
    const Complex reflected_part = kp_term(sum, +1.0, n, k_l) + kp_term(sum, -1.0, n, k_l);

    const Complex front = -std::polar(1.0, -kPi / 4.0) /
                          (2.0 * n * std::sqrt(2.0 * kPi * k) * sin_beta);
    const Complex d_soft = front * (incident_part - reflected_part);
    const Complex d_hard = front * (incident_part + reflected_part);

    const double spreading =
        std::sqrt(s_incident / (s_diffracted * (s_incident + s_diffracted)));
    return {d_soft * spreading, d_hard * spreading};
}

}  // namespace emtrace
