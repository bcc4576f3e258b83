// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsbrdf/phase.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsbrdf/quadrature.hpp"

namespace lsbrdf::phase {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDomainSlack = 1e-9;

double clamp_unit_interval(double mu, const char* where) {
    if (std::abs(mu) > 1.0 + kDomainSlack)
        throw std::domain_error(std::string(where) +
                                ": deflection cosine outside [-1, 1]");
    return std::clamp(mu, -1.0, 1.0);
}

// Legendre polynomial by the three-term recurrence; exact enough for the
// k <= 6 range used here and free of the C++17 special-function edge cases.
double legendre_p(int k, double x) {
    if (k == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int n = 1; n < k; ++n) {
        const double next = ((2 * n + 1) * x * p - n * pm1) / (n + 1);
        pm1 = p;
        p = next;
    }
    return p;
}

}  // namespace

double eval_phase(double mu) {
    mu = clamp_unit_interval(mu, "eval_phase");
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    return 2.0 * (s - mu * std::acos(mu)) / (3.0 * kPi * kPi);
}

const std::array<double, 7>& legendre_constants() {
    static const std::array<double, 7> k_constants = {
        1.0, -4.0 / 3.0, 5.0 / 16.0, 0.0, 1.0 / 64.0, 0.0, 13.0 / 4096.0};
    return k_constants;
}

double legendre_coefficient(int k) {
    if (k < 0) throw std::invalid_argument("legendre_coefficient: k < 0");
    const auto f = [k](double mu) { return eval_phase(mu) * legendre_p(k, mu); };
    const QuadResult q = integrate(f, -1.0, 1.0, 1e-13, 1e-12);
    if (!q.converged)
        throw std::runtime_error(
            "legendre_coefficient: quadrature not converged, error estimate " +
            std::to_string(q.error));
    return 2.0 * kPi * (2 * k + 1) * q.value;
}

double eval_phase_truncated(double mu, int terms) {
    if (terms < 1 || terms > 7)
        throw std::invalid_argument(
            "eval_phase_truncated: terms must be in [1, 7]");
    mu = clamp_unit_interval(mu, "eval_phase_truncated");
    const auto& a = legendre_constants();
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) sum += a[k] * legendre_p(k, mu);
    return sum / (4.0 * kPi);
}

namespace {

// Cumulative table over 4096 uniform panels of [-1, 1]; each entry holds
// 2 pi * Integral_{-1}^{edge} p.  Built once, then local quadrature covers the
// partial panel, keeping absolute accuracy near 1e-12.
constexpr int kCdfPanels = 4096;

const std::vector<double>& cdf_table() {
    static std::vector<double> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        table.resize(kCdfPanels + 1);
        table[0] = 0.0;
        double acc = 0.0;
        for (int i = 0; i < kCdfPanels; ++i) {
            const double a = -1.0 + 2.0 * i / kCdfPanels;
            const double b = -1.0 + 2.0 * (i + 1) / kCdfPanels;
            acc += integrate([](double t) { return eval_phase(t); }, a, b,
                             1e-14, 0.0, 24)
                       .value;
            table[i + 1] = 2.0 * kPi * acc;
        }
    });
    return table;
}

}  // namespace

double phase_cdf(double mu) {
    mu = clamp_unit_interval(mu, "phase_cdf");
    const auto& table = cdf_table();
    const int i = std::clamp(
        static_cast<int>((mu + 1.0) * 0.5 * kCdfPanels), 0, kCdfPanels - 1);
    const double edge = -1.0 + 2.0 * i / kCdfPanels;
    const double local =
        integrate([](double t) { return eval_phase(t); }, edge, mu, 1e-14, 0.0,
                  24)
            .value;
    return table[i] + 2.0 * kPi * local;
}

double invert_phase_cdf(double xi) {
    if (xi < 0.0 || xi >= 1.0)
        throw std::domain_error("invert_phase_cdf: xi outside [0, 1)");
    if (xi == 0.0) return -1.0;
    const auto& table = cdf_table();
    // Bracket from the monotone table.
    int lo = 0, hi = kCdfPanels;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (table[mid] < xi ? lo : hi) = mid;
    }
    double a = -1.0 + 2.0 * lo / kCdfPanels;
    double b = -1.0 + 2.0 * hi / kCdfPanels;
    // Safeguarded Newton on F(mu) - xi with derivative 2 pi p(mu); bisect
    // whenever a step leaves the bracket.
    double mu = 0.5 * (a + b);
    for (int iter = 0; iter < 100; ++iter) {
        const double f = phase_cdf(mu) - xi;
        if (std::abs(f) < 1e-13) break;
        (f < 0.0 ? a : b) = mu;
        const double d = 2.0 * kPi * eval_phase(mu);
        double next = (d > 0.0) ? mu - f / d : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - mu) < 1e-15) {
            mu = next;
            break;
        }
        mu = next;
    }
    return mu;
}

double sample_mu_exact(double xi1, double xi2, double xi3) {
    const double mu = std::sqrt((1.0 - xi1) * (1.0 - xi2)) *
                          std::sin(2.0 * kPi * xi3) -
                      std::sqrt(xi1 * xi2);
    return std::clamp(mu, -1.0, 1.0);
}

double sample_mu_fast(double xi) {
    const double inner = 1.0 - std::pow(xi, 0.0401885 * xi + 1.01938);
    const double mu = 1.0 - 2.0 * std::pow(inner, 0.397225);
    return std::clamp(mu, -1.0, 1.0);
}

Vec3 rotate_about(const Vec3& incident, double mu, double azimuth) {
    Vec3 b1, b2;
    orthonormal_basis(incident, b1, b2);
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    const double ca = std::cos(azimuth), sa = std::sin(azimuth);
    return {mu * incident.x + s * (ca * b1.x + sa * b2.x),
            mu * incident.y + s * (ca * b1.y + sa * b2.y),
            mu * incident.z + s * (ca * b1.z + sa * b2.z)};
}

Vec3 sample_direction(const Vec3& incident, Pcg32& rng) {
    if (std::abs(norm(incident) - 1.0) > 1e-12)
        throw std::invalid_argument("sample_direction: incident not unit");
    const double mu =
        sample_mu_exact(rng.next_double(), rng.next_double(), rng.next_double());
    const double azimuth = 2.0 * kPi * rng.next_double();
    return rotate_about(incident, mu, azimuth);
}

}  // namespace lsbrdf::phase
