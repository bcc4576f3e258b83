// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace lsbrdf::hfun {

// Controls the numeric H evaluation: the semi-infinite integral is mapped to
// [0, 1) by t = t_split * u / (1 - u) and integrated adaptively.
struct HEvalSpec {
    double t_split = 1.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_depth = 48;
};

// Characteristic polynomial Psi of the azimuthal mode (0, 1, or 2) at
// mu in [0, 1] for single-scattering albedo c in [0, 1].
// Throws std::invalid_argument for a mode outside {0, 1, 2} or arguments
// outside their ranges.
double eval_psi(int mode, double mu, double c);

// Dispersion-style kernel K of the given mode; K -> 1 as t -> infinity and
// K = 1 identically at c = 0.  Below |t| = 0.05 a Maclaurin series (through
// t^14) replaces the closed form, which loses all precision to cancellation
// there.  Accepts any t >= 0.
double eval_k(int mode, double t, double c);

// K - 1, exact in the small-c limit (every term carries a factor of c);
// the log of K is taken through log1p of this quantity.
double eval_k_minus_one(int mode, double t, double c);

// H function by numeric evaluation of
//   H(mu) = exp(-(mu/pi) Integral_0^inf log K(t) / (1 + mu^2 t^2) dt).
// Accepts mu > 1 for limit cross-checks.  Relative accuracy ~1e-8 or better
// with the default spec.  Throws std::runtime_error if K <= 0 is encountered
// (only possible for c outside [0, 1]).
double eval_h_numeric(int mode, double mu, double c, const HEvalSpec& spec = {});

// Limit of the mode-0 H function as mu -> infinity:
//   12 / sqrt((c - 16)(c - 1)(4c + 9)).
// Throws std::domain_error at c = 1 (the limit diverges there).
double h0_infinity(double c);

// Rational-exponent fit of the mode-0 H function; relative error < 1% over
// {mu, c} in [0, 1]^2.  Finite at c = 1 where the true limit at infinity
// diverges.
double eval_h0_approx(double mu, double c);

// Separable exponential fit of the mode-1 H function; relative error < 0.5%
// over {mu, c} in [0, 1]^2 and exactly 1 at c = 0 and at mu = 0.
double eval_h1_approx(double mu, double c);

}  // namespace lsbrdf::hfun
