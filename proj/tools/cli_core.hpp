// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lsbrdf/mcref.hpp"

namespace lsbrdf::cli {

// Shortest round-trip decimal representation (17 significant digits).
std::string format_real(double v);

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Plain key=value sidecar describing a command invocation; written next to
// the output file as "<path>.manifest".
void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>&
                        flags);

// Expected bin-averaged reflectance on the grid layout: a fixed 4x4
// Gauss-Legendre rule per bin of f(mu_o, phi) mu_o, normalized the same way
// as the Monte Carlo estimator.  With single_only the integrand is the exact
// single-scattering term; otherwise the full accurate model.
std::vector<double> predict_bin_values(const mc::BinGrid& layout, double mu_i,
                                       double c, bool single_only);

// Discrete azimuthal projection of externally supplied per-bin values using
// the same midpoint sums as the Monte Carlo mode extraction (stderrs zero).
std::vector<mc::ModeRow> project_values(const mc::BinGrid& layout,
                                        const std::vector<double>& values);

struct ValidatePhaseFlags {
    int terms = 3;
    long long ks_samples = 1000000;
    std::uint64_t seed = 42;
    double tol_norm = 1e-10;
    double tol_mean = 1e-10;
    double tol_legendre = 1e-8;
    double tol_ks_factor = 4.0;  // bound = factor / sqrt(N)
    double tol_fast_sampler = 0.0005;
    std::string out = "validate_phase.csv";
};
int cmd_validate_phase(const ValidatePhaseFlags& flags, std::ostream& log);

struct ValidateHFlags {
    int c_grid = 32;
    int mu_grid = 32;
    double tol_h0 = 0.01;
    double tol_h1 = 0.005;
    std::string out = "validate_h.csv";
};
int cmd_validate_h(const ValidateHFlags& flags, std::ostream& log);

struct ValidateBrdfFlags {
    double c = -1.0;   // negative = not set
    double kd = -1.0;  // negative = not set
    double mu_i = 0.5;
    long long paths = 1000000;
    std::uint64_t seed = 42;
    int bins_mu = 64;
    int bins_phi = 64;
    long long max_collisions = 100000;
    int workers = 1;
    double tol_pass_rate = 0.95;
    double tol_single_rate = 0.99;
    double tol_mode2 = 0.1;
    double tol_recip = 1e-12;
    double tol_albedo_rel = 0.02;
    double fit_rel = 0.02;    // relative part of the fit-tolerance floor
    double fit_floor = 0.002; // absolute part, times the peak zeroth mode
    std::string out = "validate_brdf.csv";
};
int cmd_validate_brdf(const ValidateBrdfFlags& flags, std::ostream& log);

struct TablesFlags {
    std::string quantity = "constants";  // constants | albedo-map | modes
    int grid = 101;
    double c = 1.0;  // used by the modes quantity
    std::string out = "tables.csv";
};
int cmd_tables(const TablesFlags& flags, std::ostream& log);

struct RenderFlags {
    double kd = 0.8;
    double light[3] = {0.0, 0.0, 1.0};
    std::string variant = "accurate";  // accurate | fast | lambertian
    int size = 256;
    std::string out = "sphere.ppm";
};
int cmd_render_sphere(const RenderFlags& flags, std::ostream& log);

// Renders into memory; exposed so paired renders can be compared directly.
std::vector<unsigned char> render_sphere_pixels(const RenderFlags& flags);

struct BenchFlags {
    long long evals = 2000000;
    std::uint64_t seed = 42;
};
int cmd_bench(const BenchFlags& flags, std::ostream& log);

}  // namespace lsbrdf::cli
