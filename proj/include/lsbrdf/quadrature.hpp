// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdlib>

namespace lsbrdf {

// Result of an adaptive integration: value, accumulated error estimate of the
// accepted panels, and whether every panel met its share of the tolerance
// before the depth limit.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
inline constexpr double gk_nodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
inline constexpr double gk_weights[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
inline constexpr double g_weights[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

template <typename F>
inline void gauss_kronrod_15(const F& f, double a, double b, double& kronrod,
                             double& gauss) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double k_sum = gk_weights[7] * f_mid;
    double g_sum = g_weights[3] * f_mid;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk_nodes[j];
        const double pair = f(mid - dx) + f(mid + dx);
        k_sum += gk_weights[j] * pair;
        if (j % 2 == 1) g_sum += g_weights[j / 2] * pair;
    }
    kronrod = half * k_sum;
    gauss = half * g_sum;
}

template <typename F>
inline void integrate_panel(const F& f, double a, double b, double tol,
                            int depth, int max_depth, QuadResult& out) {
    double k, g;
    gauss_kronrod_15(f, a, b, k, g);
    const double err = std::abs(k - g);
    if (err <= tol || depth >= max_depth) {
        out.value += k;
        out.error += err;
        if (err > tol) out.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    integrate_panel(f, a, mid, 0.5 * tol, depth + 1, max_depth, out);
    integrate_panel(f, mid, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b].  The tolerance for
// subdivision is max(abs_tol, rel_tol * |first whole-interval estimate|),
// split evenly between child panels; the error field is the sum of accepted
// panel discrepancies and bounds the true error for integrands this rule
// resolves.
template <typename F>
inline QuadResult integrate(const F& f, double a, double b,
                            double abs_tol = 1e-12, double rel_tol = 1e-10,
                            int max_depth = 48) {
    double k, g;
    detail::gauss_kronrod_15(f, a, b, k, g);
    const double tol = std::max(abs_tol, rel_tol * std::abs(k));
    QuadResult out;
    detail::integrate_panel(f, a, b, tol, 0, max_depth, out);
    return out;
}

// Single non-adaptive 15-point panel; adequate when the integrand is smooth
// over the whole panel.
template <typename F>
inline double integrate_panel_fixed(const F& f, double a, double b) {
    double k, g;
    detail::gauss_kronrod_15(f, a, b, k, g);
    return k;
}

}  // namespace lsbrdf
