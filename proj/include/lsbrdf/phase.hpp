// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "lsbrdf/rng.hpp"
#include "lsbrdf/vec3.hpp"

namespace lsbrdf::phase {

// Per-steradian density of the deflection cosine mu for scattering from an
// opaque sphere with a Lambertian surface:
//   p(mu) = 2 (sqrt(1 - mu^2) - mu acos(mu)) / (3 pi^2).
// Throws std::domain_error if |mu| > 1 beyond roundoff slack.
double eval_phase(double mu);

// Closed-form Legendre expansion coefficients A_0..A_6 of p (A_k multiplies
// P_k(mu) / (4 pi)).  A_1 = 3g with mean cosine g = -4/9.
const std::array<double, 7>& legendre_constants();

// A_k = 2 pi (2k+1) Integral p(mu) P_k(mu) dmu by adaptive quadrature.
// Throws std::runtime_error with the achieved error estimate if the
// quadrature fails to converge.
double legendre_coefficient(int k);

// Truncated expansion (1/4pi) sum_{k<terms} A_k P_k(mu) using the closed-form
// coefficients.  The result may be slightly negative near mu = 1 and is
// deliberately not clamped: downstream analytic work consumes the signed
// series.  Throws std::invalid_argument unless 1 <= terms <= 7.
double eval_phase_truncated(double mu, int terms);

// F(mu) = 2 pi Integral_{-1}^{mu} p, monotone with F(-1) = 0, F(1) = 1;
// absolute accuracy <= 1e-10 (cached panel table plus local quadrature).
double phase_cdf(double mu);

// Numeric inverse of phase_cdf for xi in [0, 1); used as the sampler oracle.
double invert_phase_cdf(double xi);

// Exact deflection-cosine sampler from three uniforms in [0, 1); output
// clamped to [-1, 1] against roundoff.
double sample_mu_exact(double xi1, double xi2, double xi3);

// One-uniform approximate inverse-CDF sampler; output clamped to [-1, 1].
double sample_mu_fast(double xi);

// Lifts the exact deflection sampler to 3-D: deflection about `incident`
// (a unit propagation direction) with uniform azimuth.  Consumes four
// uniforms.  Throws std::invalid_argument if `incident` is not unit length
// within 1e-12.
Vec3 sample_direction(const Vec3& incident, Pcg32& rng);

// Same rotation given an already-sampled deflection cosine; used by the
// transport loop so sampler choice stays in one place.
Vec3 rotate_about(const Vec3& incident, double mu, double azimuth);

}  // namespace lsbrdf::phase
