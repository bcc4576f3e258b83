// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsbrdf/brdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lsbrdf/hfun.hpp"
#include "lsbrdf/phase.hpp"
#include "lsbrdf/quadrature.hpp"

namespace lsbrdf::brdf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The printed mode expressions are 0/0-prone as both cosines vanish; the
// denominators use cosines clamped below at this threshold, which keeps the
// error invisible at render scale.
constexpr double kMuClamp = 1e-6;

double wrap_phi(double phi) {
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi <= -kPi) phi += 2.0 * kPi;
    if (phi > kPi) phi -= 2.0 * kPi;
    return phi;
}

void check_albedo(double c, const char* what) {
    if (!(c >= 0.0 && c <= 1.0))
        throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
}

double clamped(double mu) { return std::max(mu, kMuClamp); }

}  // namespace

DirectionPair::DirectionPair(double mu_i, double mu_o, double phi)
    : mu_i(mu_i), mu_o(mu_o), phi(wrap_phi(phi)) {
    if (!(mu_i > 0.0 && mu_i <= 1.0) || !(mu_o > 0.0 && mu_o <= 1.0))
        throw std::invalid_argument(
            "DirectionPair: cosines must be in (0, 1]");
}

BrdfParams BrdfParams::from_c(double c) {
    check_albedo(c, "c");
    return BrdfParams(c, c_to_kd(c));
}

BrdfParams BrdfParams::from_kd(double kd) {
    check_albedo(kd, "kd");
    return BrdfParams(kd_to_c(kd), kd);
}

double single_scatter(const DirectionPair& pair, double c) {
    check_albedo(c, "c");
    const double si = std::sqrt(1.0 - pair.mu_i * pair.mu_i);
    const double so = std::sqrt(1.0 - pair.mu_o * pair.mu_o);
    const double cos_deflect =
        -(si * so * std::cos(pair.phi) + pair.mu_i * pair.mu_o);
    return c * phase::eval_phase(cos_deflect) /
           (clamped(pair.mu_i) + clamped(pair.mu_o));
}

std::pair<double, double> constants_lm(double c) {
    check_albedo(c, "c");
    return {-0.00473696 * c * c - 0.0589037 * c, 0.44038 * c + 1.0};
}

double f1_total(double mu_i, double mu_o, double c) {
    check_albedo(c, "c");
    const auto [l, m] = constants_lm(c);
    const double root =
        std::sqrt((1.0 - mu_i * mu_i) * (1.0 - mu_o * mu_o));
    const double poly = 1.0 + (l * l + 45.0 * m / 64.0) * mu_i * mu_o +
                        l * (mu_i + mu_o);
    return c * hfun::eval_h1_approx(mu_i, c) * hfun::eval_h1_approx(mu_o, c) *
           root * poly / (6.0 * kPi * (clamped(mu_i) + clamped(mu_o)));
}

double f1_single_3term(double mu_i, double mu_o, double c) {
    check_albedo(c, "c");
    const double root =
        std::sqrt((mu_i * mu_i - 1.0) * (mu_o * mu_o - 1.0));
    return c * (45.0 * mu_i * mu_o + 64.0) * root /
           (384.0 * kPi * (clamped(mu_i) + clamped(mu_o)));
}

double f1_multi(double mu_i, double mu_o, double c) {
    return f1_total(mu_i, mu_o, c) - f1_single_3term(mu_i, mu_o, c);
}

double f1_multi_fast(double mu_i, double mu_o, double c) {
    check_albedo(c, "c");
    const double root =
        std::sqrt((1.0 - mu_i * mu_i) * (1.0 - mu_o * mu_o));
    return -0.0117 * c * std::atan(c) * root *
           std::sqrt(std::tanh(mu_i + mu_i * mu_o + mu_o)) /
           (clamped(mu_i) + clamped(mu_o));
}

std::pair<double, double> constants_AE(double c) {
    check_albedo(c, "c");
    return {69.0 * c / 128.0,
            15.0 / 128.0 * (1.0 - c) * c * (4.0 * c / 3.0 + 3.0)};
}

std::array<double, 4> constants_BCDF(double c) {
    check_albedo(c, "c");
    const double s = std::sqrt(1.0 - c);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double b = (0.346689 * s3 - 0.777574 * s2 + 0.515357 * s - 0.084463) /
                     (0.182602 * s2 - 0.665502 * s + 0.964893);
    const double cc = (-5602.45 * s3 + 7487.99 * s2 - 2567.74 * s + 682.848) /
                      (1480.25 * s2 - 4008.33 * s + 5850.6);
    const double d = (166.883 * s3 - 327.428 * s2 + 160.397 * s + 0.285529) /
                     (596.423 * s2 - 412.984 * s + 674.191);
    const double f = (266.063 * s3 - 21.9141 * s2 - 242.16 * s - 1.9209) /
                     (215.773 * s2 + 457.42 * s + 1499.9);
    return {b, cc, d, f};
}

double f0_total(double mu_i, double mu_o, double c) {
    check_albedo(c, "c");
    const auto [a, e] = constants_AE(c);
    const auto bcdf = constants_BCDF(c);
    const double b = bcdf[0], cc = bcdf[1], d = bcdf[2], f = bcdf[3];
    const double sum = mu_i + mu_o;
    const double prod = mu_i * mu_o;
    const double prod_sq = (mu_i * mu_i) * (mu_o * mu_o);
    const double poly = a + b * sum + cc * prod + d * (prod * sum) +
                        e * prod_sq + f * (mu_i * mu_i + mu_o * mu_o);
    return hfun::eval_h0_approx(mu_i, c) * hfun::eval_h0_approx(mu_o, c) *
           poly / (2.0 * kPi * (clamped(mu_i) + clamped(mu_o)));
}

double f0_single_3term(double mu_i, double mu_o, double c) {
    check_albedo(c, "c");
    const double num = 45.0 * mu_i * mu_i * (3.0 * mu_o * mu_o - 1.0) +
                       256.0 * mu_i * mu_o - 45.0 * mu_o * mu_o + 207.0;
    return c * num / (768.0 * kPi * (clamped(mu_i) + clamped(mu_o)));
}

double f0_multi(double mu_i, double mu_o, double c) {
    return f0_total(mu_i, mu_o, c) - f0_single_3term(mu_i, mu_o, c);
}

double eval_brdf_accurate_raw(const DirectionPair& pair,
                              const BrdfParams& params) {
    // The first-order functions are half-range projections
    // (1/2pi) Integral f cos(phi) dphi, so the cosine term carries
    // reconstruction weight 2 (verified against the transport reference).
    return single_scatter(pair, params.c) +
           f0_multi(pair.mu_i, pair.mu_o, params.c) +
           2.0 * f1_multi(pair.mu_i, pair.mu_o, params.c) *
               std::cos(pair.phi);
}

double eval_brdf_accurate(const DirectionPair& pair, const BrdfParams& params) {
    return std::max(0.0, eval_brdf_accurate_raw(pair, params));
}

double eval_brdf_fast(const DirectionPair& pair, const BrdfParams& params) {
    const double s = std::sqrt(1.0 - pair.mu_i * pair.mu_i) *
                     std::sqrt(1.0 - pair.mu_o * pair.mu_o);
    // acos(S)/S -> infinity as S -> 0, so the regression term vanishes there.
    double middle = 0.0;
    if (s >= 1e-12) {
        middle = 0.0151829 * (params.c - 0.249978) *
                 (std::abs(pair.phi) + std::sqrt(pair.mu_i * pair.mu_o)) /
                 (std::acos(s) / s + 0.113706);
    }
    const double value = single_scatter(pair, params.c) + middle +
                         0.234459 * std::pow(params.kd, 1.85432);
    return std::max(0.0, value);
}

double kd_to_c_raw(double kd) {
    check_albedo(kd, "kd");
    const double u = 1.0 - kd;
    return (1.0 - 1.00425 * std::pow(u, 2.67103)) /
           (1.0 - 0.219924 * std::pow(u, 2.44559));
}

double c_to_kd_raw(double c) {
    check_albedo(c, "c");
    const double s = std::sqrt(1.0 - c);
    return (-0.453029 * (1.0 - c) - 0.544162 * s + 1.0) / (1.42931 * s + 1.0);
}

double kd_to_c(double kd) { return std::clamp(kd_to_c_raw(kd), 0.0, 1.0); }

double c_to_kd(double c) { return std::clamp(c_to_kd_raw(c), 0.0, 1.0); }

double albedo_directional(double mu_i, const BrdfParams& params) {
    if (!(mu_i > 0.0 && mu_i <= 1.0))
        throw std::invalid_argument("albedo_directional: mu_i not in (0, 1]");
    // The integrand is even in phi, so integrate phi over [0, pi] and double.
    const auto outer = [&](double mu_o) {
        const auto inner = [&](double phi) {
            return eval_brdf_accurate(DirectionPair(mu_i, mu_o, phi), params);
        };
        return 2.0 * integrate(inner, 0.0, kPi, 1e-10, 1e-9, 30).value * mu_o;
    };
    return integrate(outer, kMuClamp, 1.0, 1e-9, 1e-8, 24).value;
}

double albedo_spherical(const BrdfParams& params) {
    const auto f = [&](double mu_i) {
        return 2.0 * mu_i * albedo_directional(mu_i, params);
    };
    return integrate(f, kMuClamp, 1.0, 1e-7, 1e-6, 16).value;
}

OutgoingSample sample_outgoing(double mu_i, const BrdfParams& params,
                               Pcg32& rng) {
    (void)mu_i;
    (void)params;
    const double xi1 = rng.next_double();
    const double xi2 = rng.next_double();
    const double mu_o = std::sqrt(std::max(xi1, 1e-12));
    const double phi = wrap_phi(2.0 * kPi * xi2);
    return {mu_o, phi, mu_o / kPi};
}

}  // namespace lsbrdf::brdf
