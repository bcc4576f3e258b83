// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "lsbrdf/brdf.hpp"

namespace lsbrdf::mc {

// Transport run configuration.  Paths are processed in fixed-size chunks,
// each with its own random stream keyed by (seed, chunk index); results are
// therefore bit-identical for any worker count.
struct McConfig {
    long long n_paths = 1000000;
    std::uint64_t seed = 42;
    // Collisions allowed per path; the next collision terminates the path
    // into the terminated-weight bucket.  0 means unlimited (roulette only).
    long long max_collisions = 100000;
    double roulette_threshold = 1e-4;
    double roulette_survival = 0.1;
    int n_workers = 1;
};

// Escaped-energy tally over a uniform (mu_o, phi) grid, plus exact weight
// accounting.  Weight conservation:
//   escaped + absorbed + roulette_killed + terminated = n_paths + boost,
// where boost is the weight added by surviving roulette rounds.
struct BinGrid {
    int n_mu = 0;
    int n_phi = 0;
    std::vector<double> mu_edges;   // size n_mu + 1, ascending over [0, 1]
    std::vector<double> phi_edges;  // size n_phi + 1, ascending over [-pi, pi]
    std::vector<double> weights;    // n_mu * n_phi, row-major in mu
    std::vector<double> squared_weights;

    struct Diagnostics {
        double escaped_weight = 0.0;
        double absorbed_weight = 0.0;
        double roulette_killed_weight = 0.0;
        double roulette_boost_weight = 0.0;
        double terminated_weight = 0.0;
        double escaped_weight_sq = 0.0;     // sum of squared per-path escapes
        double terminated_weight_sq = 0.0;
        long long n_paths = 0;
        long long n_escaped = 0;
        long long n_terminated = 0;
        long long total_collisions = 0;
        long long max_collision_count = 0;
    } diag;

    int bin_index(int i_mu, int i_phi) const { return i_mu * n_phi + i_phi; }
};

// Simulates particle paths entering a homogeneous half space (z < 0) along
// (-sqrt(1-mu_i^2), 0, -mu_i): free flights ~ Exponential(1) in mean-free-path
// units, absorption by weighting (weight *= c per collision), scattering by
// the exact deflection sampler, analytic escape through z = 0, Russian
// roulette below the weight threshold.  Escaped (direction, weight) pairs are
// binned by (mu_o, phi) with phi measured from the incidence plane, so the
// backscattering half-plane is phi = 0.
BinGrid simulate_halfspace(double mu_i, double c, const McConfig& cfg,
                           int n_mu_bins = 64, int n_phi_bins = 64);

// Reflectance estimate for one bin: value = weight sum / (n_paths * mu_mid *
// dmu * dphi); stderr from the squared-weight sum.
struct BrdfEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

std::vector<BrdfEstimate> estimate_brdf(const BinGrid& grid,
                                        long long n_paths);

// Azimuthal modes of the estimates for one mu_o row:
//   f0 = (1/2pi) Integral f dphi,  fm = (1/pi) Integral f cos(m phi) dphi,
// via midpoint sums over the phi bins; standard errors propagate from the
// per-bin errors.
struct ModeRow {
    brdf::FourierModes modes;
    brdf::FourierModes stderrs;
};

std::vector<ModeRow> fourier_project(const BinGrid& grid, long long n_paths);

// Total escaped weight / n_paths with standard error.  In the conservative
// case (c = 1) weight parked in the terminated bucket by the collision cap is
// counted as escaped: with no absorption, escape is almost sure and carries
// the full weight.
struct AlbedoEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

AlbedoEstimate albedo_mc(double mu_i, double c, const McConfig& cfg);

}  // namespace lsbrdf::mc
