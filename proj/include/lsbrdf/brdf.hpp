// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <utility>

#include "lsbrdf/rng.hpp"

namespace lsbrdf::brdf {

// An incident/outgoing cosine pair with relative azimuth.  Both cosines are
// measured from the surface normal with the directions pointing away from the
// surface; the incident azimuth is 0, so phi = 0 is the backscattering
// half-plane.  phi is wrapped to (-pi, pi].  Throws std::invalid_argument
// unless 0 < mu <= 1 for both cosines.
struct DirectionPair {
    double mu_i;
    double mu_o;
    double phi;
    DirectionPair(double mu_i, double mu_o, double phi);
};

// Albedo parameters: c is the single-scattering (particle) albedo, kd the
// spherical/bond albedo of the material.  Constructors accept either and
// derive the other through the fitted mapping.
struct BrdfParams {
    double c;
    double kd;
    static BrdfParams from_c(double c);
    static BrdfParams from_kd(double kd);

  private:
    BrdfParams(double c, double kd) : c(c), kd(kd) {}
};

struct FourierModes {
    double f0 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
};

// Exact single-scattering reflectance c p(-w_i . w_o) / (mu_i + mu_o) with
// the exact phase function.
double single_scatter(const DirectionPair& pair, double c);

// Fitted constants of the first-order mode.
std::pair<double, double> constants_lm(double c);

// First-order mode, all scattering orders, using the fitted H and constants.
// All first-order functions here are azimuthal projections with the 1/(2pi)
// weight of the transfer-matrix literature: (1/2pi) Integral f cos(phi)
// dphi.  The cos(phi) reconstruction weight for these is therefore 2.
double f1_total(double mu_i, double mu_o, double c);

// First-order azimuthal projection of single scattering under the three-term
// phase expansion; subtracted from f1_total so exact single scattering can be
// added back.
double f1_single_3term(double mu_i, double mu_o, double c);

// Multiple-scattering part: f1_total - f1_single_3term.
double f1_multi(double mu_i, double mu_o, double c);

// Cheaper symbolic-regression substitute for f1_multi.
double f1_multi_fast(double mu_i, double mu_o, double c);

// Closed-form constants of the zeroth-order mode.
std::pair<double, double> constants_AE(double c);

// Fitted constants of the zeroth-order mode, as {B, C, D, F}.
std::array<double, 4> constants_BCDF(double c);

// Zeroth-order mode, all scattering orders.
double f0_total(double mu_i, double mu_o, double c);

// Zeroth-order azimuthal projection of three-term single scattering.
double f0_single_3term(double mu_i, double mu_o, double c);

// Multiple-scattering part: f0_total - f0_single_3term.
double f0_multi(double mu_i, double mu_o, double c);

// Full reflectance: exact single scattering plus the two fitted
// multiple-scattering modes (the second-order multiple-scattering mode is
// dropped as negligible); the first-order projection enters with its
// reconstruction weight 2.  Clamped at 0; the unclamped value is available
// for validation.
double eval_brdf_accurate(const DirectionPair& pair, const BrdfParams& params);
double eval_brdf_accurate_raw(const DirectionPair& pair,
                              const BrdfParams& params);

// Cheap variant: exact single scattering plus a regression term in c, kd,
// |phi| and the grazing measure S = sqrt(1-mu_i^2) sqrt(1-mu_o^2); clamped
// at 0.
double eval_brdf_fast(const DirectionPair& pair, const BrdfParams& params);

// Fitted albedo mappings, clamped to [0, 1]; raw fit values provided for
// validation.  Inputs outside [0, 1] are rejected.
double kd_to_c(double kd);
double c_to_kd(double c);
double kd_to_c_raw(double kd);
double c_to_kd_raw(double c);

// Cosine-weighted hemispherical integrals of eval_brdf_accurate: reflectance
// for incidence cosine mu_i, and its 2 mu_i-weighted average over incidence.
double albedo_directional(double mu_i, const BrdfParams& params);
double albedo_spherical(const BrdfParams& params);

// Cosine-weighted outgoing sample completing (mu_i, params): pdf = mu_o / pi
// over the hemisphere.
struct OutgoingSample {
    double mu_o;
    double phi;
    double pdf;
};
OutgoingSample sample_outgoing(double mu_i, const BrdfParams& params,
                               Pcg32& rng);

}  // namespace lsbrdf::brdf
