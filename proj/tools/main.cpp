// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_core.hpp"

namespace {

// "NxM" (or a single number for a square grid) -> two positive ints.
void parse_bins(const std::string& text, int& n_mu, int& n_phi) {
    const auto sep = text.find('x');
    size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, sep);
    const int va = std::stoi(a, &used_a);
    int vb = va;
    if (sep != std::string::npos) {
        const std::string b = text.substr(sep + 1);
        vb = std::stoi(b, &used_b);
        if (used_b != b.size()) throw std::invalid_argument(text);
    }
    if (used_a != a.size() || va < 1 || vb < 1)
        throw std::invalid_argument(text);
    n_mu = va;
    n_phi = vb;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic reflectance of a particulate half space: fitted "
                 "model evaluation, tabulation, rendering, and Monte Carlo "
                 "validation"};
    app.require_subcommand(1);

    lsbrdf::cli::ValidatePhaseFlags phase_flags;
    auto* vp = app.add_subcommand(
        "validate-phase",
        "Check the deflection density: normalization, moments, expansion "
        "coefficients, truncation error, and both samplers");
    vp->add_option("--terms", phase_flags.terms,
                   "Expansion terms for the truncation metrics")
        ->check(CLI::Range(1, 7));
    vp->add_option("--ks-samples", phase_flags.ks_samples,
                   "Draws per sampler distribution test")
        ->check(CLI::PositiveNumber);
    vp->add_option("--seed", phase_flags.seed, "Random stream seed");
    vp->add_option("--tol-fast-sampler", phase_flags.tol_fast_sampler,
                   "Bound on the one-uniform sampler's worst inversion error");
    vp->add_option("--out", phase_flags.out, "Output CSV path");

    lsbrdf::cli::ValidateHFlags h_flags;
    auto* vh = app.add_subcommand(
        "validate-h",
        "Compare the fitted H functions against numeric evaluation on a "
        "(c, mu) grid");
    vh->add_option("--c-grid", h_flags.c_grid, "Albedo grid points")
        ->check(CLI::Range(2, 100000));
    vh->add_option("--mu-grid", h_flags.mu_grid, "Cosine grid points")
        ->check(CLI::Range(2, 100000));
    vh->add_option("--tol-h0", h_flags.tol_h0, "Mode-0 relative error bound");
    vh->add_option("--tol-h1", h_flags.tol_h1, "Mode-1 relative error bound");
    vh->add_option("--out", h_flags.out, "Output CSV path");

    lsbrdf::cli::ValidateBrdfFlags brdf_flags;
    std::string bins_text = "64x64";
    auto* vb = app.add_subcommand(
        "validate-brdf",
        "Run the Monte Carlo half-space reference and compare the fitted "
        "reflectance model against it");
    auto* opt_c = vb->add_option("--c", brdf_flags.c,
                                 "Single-scattering albedo in [0, 1]")
                      ->check(CLI::Range(0.0, 1.0));
    auto* opt_kd = vb->add_option("--kd", brdf_flags.kd,
                                  "Material albedo in [0, 1]")
                       ->check(CLI::Range(0.0, 1.0));
    opt_c->excludes(opt_kd);
    opt_kd->excludes(opt_c);
    vb->add_option("--mu-i", brdf_flags.mu_i, "Incidence cosine in (0, 1]");
    vb->add_option("--paths", brdf_flags.paths, "Monte Carlo paths")
        ->check(CLI::PositiveNumber);
    vb->add_option("--seed", brdf_flags.seed, "Random stream seed");
    vb->add_option("--bins", bins_text, "Outgoing grid, e.g. 64x64");
    vb->add_option("--max-collisions", brdf_flags.max_collisions,
                   "Collision cap per path (1 = single scattering only, "
                   "0 = unlimited)");
    vb->add_option("--workers", brdf_flags.workers, "Worker threads")
        ->check(CLI::Range(1, 256));
    vb->add_option("--out", brdf_flags.out, "Output CSV path");

    lsbrdf::cli::TablesFlags tables_flags;
    auto* tb = app.add_subcommand(
        "tables", "Tabulate fitted constants, albedo mappings, or azimuthal "
                  "modes as CSV");
    tb->add_option("--quantity", tables_flags.quantity,
                   "constants | albedo-map | modes");
    tb->add_option("--grid", tables_flags.grid, "Grid points")
        ->check(CLI::Range(2, 1000000));
    tb->add_option("--c", tables_flags.c,
                   "Single-scattering albedo (modes quantity)")
        ->check(CLI::Range(0.0, 1.0));
    tb->add_option("--out", tables_flags.out, "Output CSV path");

    lsbrdf::cli::RenderFlags render_flags;
    std::vector<double> light = {0.0, 0.0, 1.0};
    auto* rs = app.add_subcommand(
        "render-sphere",
        "Orthographic render of a unit sphere under a directional light "
        "(binary PPM)");
    rs->add_option("--kd", render_flags.kd, "Material albedo in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    rs->add_option("--light-dir", light, "Light direction x,y,z")
        ->delimiter(',')
        ->expected(3);
    rs->add_option("--variant", render_flags.variant,
                   "accurate | fast | lambertian")
        ->check(CLI::IsMember({"accurate", "fast", "lambertian"}));
    rs->add_option("--size", render_flags.size, "Image size in pixels")
        ->check(CLI::Range(1, 8192));
    rs->add_option("--out", render_flags.out, "Output PPM path");

    lsbrdf::cli::BenchFlags bench_flags;
    auto* bn = app.add_subcommand(
        "bench", "Time the reflectance evaluation paths");
    bn->add_option("--evals", bench_flags.evals, "Evaluations per path")
        ->check(CLI::PositiveNumber);
    bn->add_option("--seed", bench_flags.seed, "Random stream seed");

    try {
        app.parse(argc, argv);
        if (vb->parsed())
            parse_bins(bins_text, brdf_flags.bins_mu, brdf_flags.bins_phi);
        if (rs->parsed()) {
            render_flags.light[0] = light[0];
            render_flags.light[1] = light[1];
            render_flags.light[2] = light[2];
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (vp->parsed()) return lsbrdf::cli::cmd_validate_phase(phase_flags,
                                                                 std::cout);
        if (vh->parsed()) return lsbrdf::cli::cmd_validate_h(h_flags,
                                                             std::cout);
        if (vb->parsed()) return lsbrdf::cli::cmd_validate_brdf(brdf_flags,
                                                                std::cout);
        if (tb->parsed()) return lsbrdf::cli::cmd_tables(tables_flags,
                                                         std::cout);
        if (rs->parsed()) return lsbrdf::cli::cmd_render_sphere(render_flags,
                                                                std::cout);
        if (bn->parsed()) return lsbrdf::cli::cmd_bench(bench_flags,
                                                        std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
