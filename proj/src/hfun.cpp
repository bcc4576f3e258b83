// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsbrdf/hfun.hpp"

#include <cmath>
#include <stdexcept>

#include "lsbrdf/quadrature.hpp"

namespace lsbrdf::hfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The closed forms below have t^5 denominators against arctan numerators and
// cancel catastrophically as t -> 0; below this threshold the Maclaurin
// series (even powers through t^14, next term < 1e-20) is used instead.
constexpr double kSeriesThreshold = 0.05;

void check_mode(int mode) {
    if (mode < 0 || mode > 2)
        throw std::invalid_argument("H mode must be 0, 1, or 2");
}

void check_albedo(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw std::invalid_argument("albedo c must be in [0, 1]");
}

// Maclaurin coefficients of K - 1 in powers of t^2.  Each coefficient carries
// an overall factor of c, kept explicit so K - 1 vanishes identically at
// c = 0.
void series_coefficients(int mode, double c, double a[8]) {
    switch (mode) {
        case 0:
            a[0] = c * (4.0 * c * c - 59.0 * c - 89.0) / 144.0;
            a[1] = -c * (40.0 * c * c - 398.0 * c - 167.0) / 1680.0;
            a[2] = c * (100.0 * c * c - 835.0 * c - 183.0) / 5040.0;
            a[3] = -c * (560.0 * c * c - 4228.0 * c - 589.0) / 33264.0;
            a[4] = c * (100.0 * c * c - 707.0 * c - 69.0) / 6864.0;
            a[5] = -c * (88.0 * c * c - 594.0 * c - 43.0) / 6864.0;
            a[6] = c * (1820.0 * c * c - 11869.0 * c - 661.0) / 159120.0;
            a[7] = -c * (800.0 * c * c - 5080.0 * c - 223.0) / 77520.0;
            break;
        case 1:
            a[0] = c * (55.0 - 4.0 * c) / 144.0;
            a[1] = c * (60.0 * c - 313.0) / 5040.0;
            a[2] = -c * (100.0 * c - 351.0) / 15120.0;
            a[3] = c * (140.0 * c - 389.0) / 33264.0;
            a[4] = -c * (180.0 * c - 427.0) / 61776.0;
            a[5] = c * (44.0 * c - 93.0) / 20592.0;
            a[6] = -c * (260.0 * c - 503.0) / 159120.0;
            a[7] = c * (300.0 * c - 541.0) / 232560.0;
            break;
        default:
            a[0] = -c / 16.0;
            a[1] = c / 112.0;
            a[2] = -c / 336.0;
            a[3] = 5.0 * c / 3696.0;
            a[4] = -5.0 * c / 6864.0;
            a[5] = c / 2288.0;
            a[6] = -c / 3536.0;
            a[7] = c / 5168.0;
            break;
    }
}

double k_minus_one_series(int mode, double t, double c) {
    double a[8];
    series_coefficients(mode, c, a);
    const double t2 = t * t;
    double acc = a[7];
    for (int j = 6; j >= 0; --j) acc = acc * t2 + a[j];
    return acc;
}

// K itself from the series, with the constant term in factored form.  The
// mode-0 constant vanishes at c = 1, where forming K as 1 + (K - 1) would
// lose everything to cancellation; the factored product is exact there.
double k_value_series(int mode, double t, double c) {
    double a[8];
    series_coefficients(mode, c, a);
    switch (mode) {
        case 0: a[0] = (c - 16.0) * (c - 1.0) * (4.0 * c + 9.0) / 144.0; break;
        case 1: a[0] = -(c - 16.0) * (4.0 * c + 9.0) / 144.0; break;
        default: a[0] = (16.0 - c) / 16.0; break;
    }
    const double t2 = t * t;
    double acc = a[7];
    for (int j = 6; j >= 0; --j) acc = acc * t2 + a[j];
    return acc;
}

double k_minus_one_direct(int mode, double t, double c) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t2 * t2;
    const double t5 = t4 * t;
    const double at = std::atan(t);
    switch (mode) {
        case 0: {
            const double q = 15.0 * (c - 1.0) * (4.0 * c + 9.0);
            const double num = (256.0 * c - 301.0) * t3 +
                               ((346.0 - c * (20.0 * c + 281.0)) * t2 - q +
                                207.0 * t4) *
                                   at +
                               q * t;
            return -c * num / (192.0 * t5);
        }
        case 1: {
            const double num = (40.0 * c + 282.0) * t3 -
                               3.0 * (t2 + 1.0) *
                                   (20.0 * c + 64.0 * t2 + 45.0) * at +
                               15.0 * (4.0 * c + 9.0) * t;
            return -c * num / (288.0 * t5);
        }
        default: {
            const double num =
                3.0 * (t2 + 1.0) * (t2 + 1.0) * at - t * (5.0 * t2 + 3.0);
            return -5.0 * c * num / (128.0 * t5);
        }
    }
}

}  // namespace

double eval_psi(int mode, double mu, double c) {
    check_mode(mode);
    check_albedo(c);
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::invalid_argument("eval_psi: mu must be in [0, 1]");
    const double m2 = mu * mu;
    switch (mode) {
        case 0:
            return c *
                   (-15.0 * (c - 1.0) * (4.0 * c + 9.0) * m2 * m2 +
                    (c * (20.0 * c + 281.0) - 346.0) * m2 + 207.0) /
                   384.0;
        case 1:
            return -c * (m2 - 1.0) * (5.0 * (4.0 * c + 9.0) * m2 - 64.0) /
                   192.0;
        default:
            return 15.0 * c * (m2 - 1.0) * (m2 - 1.0) / 256.0;
    }
}

double eval_k_minus_one(int mode, double t, double c) {
    check_mode(mode);
    check_albedo(c);
    if (!(t >= 0.0)) throw std::invalid_argument("eval_k: t must be >= 0");
    return (t < kSeriesThreshold) ? k_minus_one_series(mode, t, c)
                                  : k_minus_one_direct(mode, t, c);
}

double eval_k(int mode, double t, double c) {
    check_mode(mode);
    check_albedo(c);
    if (!(t >= 0.0)) throw std::invalid_argument("eval_k: t must be >= 0");
    return (t < kSeriesThreshold) ? k_value_series(mode, t, c)
                                  : 1.0 + k_minus_one_direct(mode, t, c);
}

double eval_h_numeric(int mode, double mu, double c, const HEvalSpec& spec) {
    check_mode(mode);
    check_albedo(c);
    if (!(mu >= 0.0))
        throw std::invalid_argument("eval_h_numeric: mu must be >= 0");
    if (mu == 0.0 || c == 0.0) return 1.0;

    const double t_split = spec.t_split;
    bool invalid_k = false;
    const auto integrand = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double t = t_split * u / (1.0 - u);
        const double jac = t_split / ((1.0 - u) * (1.0 - u));
        double log_k;
        if (t < kSeriesThreshold) {
            // K can approach 0 here (mode 0 at c = 1 has K(0) = 0, an
            // integrable log singularity), so take the log of K itself.
            const double k = k_value_series(mode, t, c);
            if (k <= 0.0) {
                invalid_k = true;
                return 0.0;
            }
            log_k = std::log(k);
        } else {
            const double km1 = k_minus_one_direct(mode, t, c);
            if (km1 <= -1.0) {
                invalid_k = true;
                return 0.0;
            }
            log_k = std::log1p(km1);
        }
        return log_k / (1.0 + mu * mu * t * t) * jac;
    };
    const QuadResult q = integrate(integrand, 0.0, 1.0, spec.abs_tol,
                                   spec.rel_tol, spec.max_depth);
    if (invalid_k)
        throw std::runtime_error("eval_h_numeric: K <= 0 on quadrature grid");
    return std::exp(-mu / kPi * q.value);
}

double h0_infinity(double c) {
    check_albedo(c);
    if (c >= 1.0 - 1e-12)
        throw std::domain_error("h0_infinity diverges as c -> 1");
    return 12.0 / std::sqrt((c - 16.0) * (c - 1.0) * (4.0 * c + 9.0));
}

double eval_h0_approx(double mu, double c) {
    check_albedo(c);
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::invalid_argument("eval_h0_approx: mu must be in [0, 1]");
    const double s = std::sqrt(1.0 - c);
    const double a =
        (1.50112 * std::pow(s, 6.05435) + 8.21644) / (4.17593 - 1.21222 * s);
    const double s7 = s * s * s * s * s * s * s;
    const double d =
        (7.7731 - 0.565811 * std::pow(s, 0.961546)) / (8.65912 - 0.159974 * s7);
    const double amd = a * std::pow(mu, d);
    // 1/H(inf) = sqrt((c-16)(c-1)(4c+9))/12 stays finite through c = 1,
    // where it vanishes and the fit reduces to 1 + a mu^d.
    const double inv_h_inf =
        std::sqrt((c - 16.0) * (c - 1.0) * (4.0 * c + 9.0)) / 12.0;
    return (1.0 + amd) / (1.0 + amd * inv_h_inf);
}

double eval_h1_approx(double mu, double c) {
    check_albedo(c);
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::invalid_argument("eval_h1_approx: mu must be in [0, 1]");
    // Separable in the exponent: a c-dependent amplitude times a fixed
    // mu-shape.  Exactly 1 at c = 0 and at mu = 0.
    const double amplitude = 0.0242851 * c * c - 0.144839 * c;
    const double shape_exp =
        ((-1.12831 * mu + 1.85728) * mu - 1.07879) * mu + 0.459442;
    return std::exp(amplitude * std::pow(mu, shape_exp));
}

}  // namespace lsbrdf::hfun
