// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#include "cli_core.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "lsbrdf/brdf.hpp"
#include "lsbrdf/hfun.hpp"
#include "lsbrdf/phase.hpp"
#include "lsbrdf/quadrature.hpp"
#include "lsbrdf/rng.hpp"
#include "lsbrdf/version.hpp"

namespace lsbrdf::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string status_text(bool pass) { return pass ? "pass" : "fail"; }

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Row builder for the check-style CSVs.
std::vector<std::string> check_row(const std::string& name, double measured,
                                   double bound, bool pass) {
    return {name, format_real(measured), format_real(bound),
            status_text(pass)};
}

double kolmogorov_smirnov(std::vector<double>& samples) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = phase::phase_cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(
    const std::string& out_path, const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& flags) {
    const std::string path = out_path + ".manifest";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "command=" << command << "\n";
    out << "version=" << version_string << "\n";
    for (const auto& [k, v] : flags) out << k << "=" << v << "\n";
    out << "timestamp=" << timestamp_utc() << "\n";
}

std::vector<double> predict_bin_values(const mc::BinGrid& layout, double mu_i,
                                       double c, bool single_only) {
    static constexpr double nodes[4] = {-0.8611363115940526,
                                        -0.3399810435848563,
                                        0.3399810435848563,
                                        0.8611363115940526};
    static constexpr double wts[4] = {0.3478548451374538, 0.6521451548625461,
                                      0.6521451548625461, 0.3478548451374538};
    const auto params = brdf::BrdfParams::from_c(c);
    std::vector<double> out(layout.weights.size(), 0.0);
    for (int i = 0; i < layout.n_mu; ++i) {
        const double mu_a = layout.mu_edges[static_cast<size_t>(i)];
        const double mu_b = layout.mu_edges[static_cast<size_t>(i) + 1];
        const double mu_mid = 0.5 * (mu_a + mu_b);
        const double d_mu = mu_b - mu_a;
        for (int j = 0; j < layout.n_phi; ++j) {
            const double phi_a = layout.phi_edges[static_cast<size_t>(j)];
            const double phi_b = layout.phi_edges[static_cast<size_t>(j) + 1];
            const double phi_mid = 0.5 * (phi_a + phi_b);
            const double d_phi = phi_b - phi_a;
            double acc = 0.0;
            for (int a = 0; a < 4; ++a) {
                const double mu = mu_mid + 0.5 * d_mu * nodes[a];
                for (int b = 0; b < 4; ++b) {
                    const double phi = phi_mid + 0.5 * d_phi * nodes[b];
                    const brdf::DirectionPair pair(mu_i, mu, phi);
                    const double f =
                        single_only
                            ? brdf::single_scatter(pair, c)
                            : brdf::eval_brdf_accurate(pair, params);
                    acc += 0.25 * wts[a] * wts[b] * f * mu;
                }
            }
            out[static_cast<size_t>(layout.bin_index(i, j))] =
                acc * d_mu * d_phi / (mu_mid * d_mu * d_phi);
        }
    }
    return out;
}

std::vector<mc::ModeRow> project_values(const mc::BinGrid& layout,
                                        const std::vector<double>& values) {
    std::vector<mc::ModeRow> rows(static_cast<size_t>(layout.n_mu));
    for (int i = 0; i < layout.n_mu; ++i) {
        double acc[3] = {0.0, 0.0, 0.0};
        for (int j = 0; j < layout.n_phi; ++j) {
            const double phi_mid =
                0.5 * (layout.phi_edges[static_cast<size_t>(j)] +
                       layout.phi_edges[static_cast<size_t>(j) + 1]);
            const double d_phi =
                layout.phi_edges[static_cast<size_t>(j) + 1] -
                layout.phi_edges[static_cast<size_t>(j)];
            const double v =
                values[static_cast<size_t>(layout.bin_index(i, j))];
            acc[0] += d_phi / (2.0 * kPi) * v;
            acc[1] += d_phi / kPi * std::cos(phi_mid) * v;
            acc[2] += d_phi / kPi * std::cos(2.0 * phi_mid) * v;
        }
        rows[static_cast<size_t>(i)].modes = {acc[0], acc[1], acc[2]};
    }
    return rows;
}

int cmd_validate_phase(const ValidatePhaseFlags& flags, std::ostream& log) {
    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    const auto add = [&](const std::string& name, double measured,
                         double bound, bool informational = false) {
        const bool pass = informational || measured <= bound;
        all_pass = all_pass && pass;
        rows.push_back(check_row(name, measured, bound, pass));
    };

    const auto p = [](double mu) { return phase::eval_phase(mu); };
    const double norm =
        2.0 * kPi * integrate(p, -1.0, 1.0, 1e-13, 1e-12).value;
    add("normalization", std::abs(norm - 1.0), flags.tol_norm);

    const double mean =
        2.0 * kPi *
        integrate([&](double mu) { return mu * p(mu); }, -1.0, 1.0, 1e-13,
                  1e-12)
            .value;
    add("mean-cosine", std::abs(mean + 4.0 / 9.0), flags.tol_mean);

    const auto& constants = phase::legendre_constants();
    for (int k = 0; k < 7; ++k) {
        add("legendre-k" + std::to_string(k),
            std::abs(phase::legendre_coefficient(k) - constants[k]),
            flags.tol_legendre);
    }

    // Truncation error of the first `terms` expansion terms, three metrics.
    const int terms = flags.terms;
    double max_abs = 0.0;
    const int scan = 20000;
    for (int i = 0; i <= scan; ++i) {
        const double mu = -1.0 + 2.0 * i / scan;
        max_abs = std::max(
            max_abs, std::abs(phase::eval_phase_truncated(mu, terms) - p(mu)));
    }
    const double peak = p(-1.0);
    const double l1 =
        2.0 * kPi *
        integrate(
            [&](double mu) {
                return std::abs(phase::eval_phase_truncated(mu, terms) -
                                p(mu));
            },
            -1.0, 1.0, 1e-11, 1e-9)
            .value;
    add("truncation-max-abs", max_abs, kInf, true);
    add("truncation-rel-to-peak", max_abs / peak, kInf, true);
    add("truncation-l1", l1, kInf, true);

    // Sampler distribution checks (Kolmogorov-Smirnov against the CDF).
    const long long n = flags.ks_samples;
    const double ks_bound =
        flags.tol_ks_factor / std::sqrt(static_cast<double>(n));
    {
        Pcg32 rng(flags.seed, 1000);
        std::vector<double> samples(static_cast<size_t>(n));
        double sum = 0.0, sum_sq = 0.0;
        for (auto& s : samples) {
            s = phase::sample_mu_exact(rng.next_double(), rng.next_double(),
                                       rng.next_double());
            sum += s;
            sum_sq += s * s;
        }
        const double m = sum / static_cast<double>(n);
        const double sd = std::sqrt(
            std::max(0.0, sum_sq / static_cast<double>(n) - m * m));
        add("sampler-exact-ks", kolmogorov_smirnov(samples), ks_bound);
        add("sampler-exact-mean", std::abs(m + 4.0 / 9.0),
            3.0 * sd / std::sqrt(static_cast<double>(n)));
    }
    {
        Pcg32 rng(flags.seed, 1001);
        std::vector<double> samples(static_cast<size_t>(n));
        for (auto& s : samples) s = phase::sample_mu_fast(rng.next_double());
        add("sampler-fast-ks", kolmogorov_smirnov(samples), ks_bound);
    }

    // Worst-case inversion error of the one-uniform sampler on a uniform
    // 1e5-point grid.
    {
        double worst = 0.0;
        const int grid = 100000;
        for (int i = 0; i < grid; ++i) {
            const double xi = static_cast<double>(i) / grid;
            worst = std::max(worst,
                             std::abs(phase::sample_mu_fast(xi) -
                                      phase::invert_phase_cdf(xi)));
        }
        add("sampler-fast-max-error", worst, flags.tol_fast_sampler);
    }

    write_csv(flags.out, {"check", "measured", "bound", "status"}, rows);
    write_manifest(
        flags.out, "validate-phase",
        {{"terms", std::to_string(flags.terms)},
         {"ks-samples", std::to_string(flags.ks_samples)},
         {"seed", std::to_string(flags.seed)},
         {"tol-norm", format_real(flags.tol_norm)},
         {"tol-mean", format_real(flags.tol_mean)},
         {"tol-legendre", format_real(flags.tol_legendre)},
         {"tol-ks-factor", format_real(flags.tol_ks_factor)},
         {"tol-fast-sampler", format_real(flags.tol_fast_sampler)},
         {"out", flags.out}});
    log << "validate-phase: " << rows.size() << " checks, "
        << (all_pass ? "all passed" : "FAILURES present") << ", wrote "
        << flags.out << "\n";
    return all_pass ? 0 : 1;
}

int cmd_validate_h(const ValidateHFlags& flags, std::ostream& log) {
    if (flags.c_grid < 2 || flags.mu_grid < 2)
        throw std::invalid_argument("validate-h: grids need >= 2 points");
    std::vector<std::vector<std::string>> grid_rows;
    double worst[2] = {0.0, 0.0};
    double worst_mu[2] = {0.0, 0.0}, worst_c[2] = {0.0, 0.0};
    const double tol[2] = {flags.tol_h0, flags.tol_h1};
    for (int mode = 0; mode < 2; ++mode) {
        for (int ic = 0; ic < flags.c_grid; ++ic) {
            const double c =
                static_cast<double>(ic) / (flags.c_grid - 1);
            for (int im = 0; im < flags.mu_grid; ++im) {
                const double mu =
                    static_cast<double>(im) / (flags.mu_grid - 1);
                const double numeric = hfun::eval_h_numeric(mode, mu, c);
                const double fitted = mode == 0
                                          ? hfun::eval_h0_approx(mu, c)
                                          : hfun::eval_h1_approx(mu, c);
                const double rel = std::abs(fitted - numeric) / numeric;
                if (rel > worst[mode]) {
                    worst[mode] = rel;
                    worst_mu[mode] = mu;
                    worst_c[mode] = c;
                }
                grid_rows.push_back({"grid", std::to_string(mode),
                                     format_real(mu), format_real(c),
                                     format_real(numeric),
                                     format_real(fitted), format_real(rel),
                                     format_real(tol[mode]),
                                     status_text(rel <= tol[mode])});
            }
        }
    }
    std::vector<std::vector<std::string>> rows;
    for (int mode = 0; mode < 2; ++mode) {
        rows.push_back({"worst-mode" + std::to_string(mode),
                        std::to_string(mode), format_real(worst_mu[mode]),
                        format_real(worst_c[mode]), "", "",
                        format_real(worst[mode]), format_real(tol[mode]),
                        status_text(worst[mode] <= tol[mode])});
    }
    rows.insert(rows.end(), grid_rows.begin(), grid_rows.end());
    write_csv(flags.out,
              {"check", "mode", "mu", "c", "numeric", "fitted", "rel_err",
               "bound", "status"},
              rows);
    write_manifest(flags.out, "validate-h",
                   {{"c-grid", std::to_string(flags.c_grid)},
                    {"mu-grid", std::to_string(flags.mu_grid)},
                    {"tol-h0", format_real(flags.tol_h0)},
                    {"tol-h1", format_real(flags.tol_h1)},
                    {"out", flags.out}});
    const bool all_pass =
        worst[0] <= flags.tol_h0 && worst[1] <= flags.tol_h1;
    log << "validate-h: worst rel err mode0 " << format_real(worst[0])
        << ", mode1 " << format_real(worst[1]) << ", wrote " << flags.out
        << "\n";
    return all_pass ? 0 : 1;
}

int cmd_validate_brdf(const ValidateBrdfFlags& flags, std::ostream& log) {
    if ((flags.c >= 0.0) == (flags.kd >= 0.0)) {
        log << "validate-brdf: exactly one of --c / --kd is required\n";
        return 2;
    }
    const auto params = flags.c >= 0.0 ? brdf::BrdfParams::from_c(flags.c)
                                       : brdf::BrdfParams::from_kd(flags.kd);
    const double c = params.c;
    if (!(flags.mu_i > 0.0 && flags.mu_i <= 1.0)) {
        log << "validate-brdf: --mu-i must be in (0, 1]\n";
        return 2;
    }

    mc::McConfig cfg;
    cfg.n_paths = flags.paths;
    cfg.seed = flags.seed;
    cfg.max_collisions = flags.max_collisions;
    cfg.n_workers = flags.workers;
    const mc::BinGrid grid = mc::simulate_halfspace(flags.mu_i, c, cfg,
                                                    flags.bins_mu,
                                                    flags.bins_phi);
    const auto& d = grid.diag;
    const double n = static_cast<double>(cfg.n_paths);

    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    const auto add_check = [&](const std::string& name, double measured,
                               double bound, bool pass) {
        all_pass = all_pass && pass;
        rows.push_back({name, "", "", format_real(measured), "", "", "",
                        format_real(bound), status_text(pass)});
    };

    // Exact weight accounting: all weight ends in exactly one bucket.
    const double closure =
        std::abs(d.escaped_weight + d.absorbed_weight +
                 d.roulette_killed_weight + d.terminated_weight -
                 d.roulette_boost_weight - n) /
        n;
    add_check("check:conservation-closure", closure, 1e-9, closure <= 1e-9);

    const bool single_mode = flags.max_collisions == 1;
    if (single_mode) {
        // Against the exact single-scattering expression, per bin, with
        // Poisson statistics: every escape carries weight exactly c.
        const auto pred = predict_bin_values(grid, flags.mu_i, c, true);
        long long n_ok = 0, n_bins = 0;
        for (int i = 0; i < grid.n_mu; ++i) {
            const double mu_mid =
                0.5 * (grid.mu_edges[static_cast<size_t>(i)] +
                       grid.mu_edges[static_cast<size_t>(i) + 1]);
            const double d_mu =
                grid.mu_edges[static_cast<size_t>(i) + 1] -
                grid.mu_edges[static_cast<size_t>(i)];
            for (int j = 0; j < grid.n_phi; ++j) {
                const size_t b = static_cast<size_t>(grid.bin_index(i, j));
                const double phi_mid =
                    0.5 * (grid.phi_edges[static_cast<size_t>(j)] +
                           grid.phi_edges[static_cast<size_t>(j) + 1]);
                const double d_phi =
                    grid.phi_edges[static_cast<size_t>(j) + 1] -
                    grid.phi_edges[static_cast<size_t>(j)];
                const double w_pred = n * pred[b] * mu_mid * d_mu * d_phi;
                const double sigma = std::sqrt(c * w_pred);
                const double z = sigma > 0.0
                                     ? (grid.weights[b] - w_pred) / sigma
                                     : 0.0;
                n_bins += 1;
                if (std::abs(z) <= 3.0) n_ok += 1;
                rows.push_back({"bin", format_real(mu_mid),
                                format_real(phi_mid),
                                format_real(grid.weights[b]),
                                format_real(sigma), format_real(w_pred),
                                format_real(z), "", ""});
            }
        }
        const double rate =
            static_cast<double>(n_ok) / static_cast<double>(n_bins);
        const bool pass = rate >= flags.tol_single_rate;
        all_pass = all_pass && pass;
        rows.insert(rows.begin() + 1,
                    {"check:single-scatter-pass-rate", "", "",
                     format_real(rate), "", "", "",
                     format_real(flags.tol_single_rate), status_text(pass)});
    } else {
        const auto estimates = mc::estimate_brdf(grid, cfg.n_paths);
        const auto mc_rows = mc::fourier_project(grid, cfg.n_paths);
        const auto pred = predict_bin_values(grid, flags.mu_i, c, false);
        const auto pred_rows = project_values(grid, pred);

        double peak_f0 = 0.0;
        for (const auto& r : pred_rows)
            peak_f0 = std::max(peak_f0, std::abs(r.modes.f0));

        long long ok[2] = {0, 0};
        double mode2_residual = 0.0, peak_f0_mc = 0.0;
        for (int i = 0; i < grid.n_mu; ++i) {
            const size_t si = static_cast<size_t>(i);
            const double mu_mid =
                0.5 * (grid.mu_edges[si] + grid.mu_edges[si + 1]);
            const double mc_m[3] = {mc_rows[si].modes.f0,
                                    mc_rows[si].modes.f1,
                                    mc_rows[si].modes.f2};
            const double se[3] = {mc_rows[si].stderrs.f0,
                                  mc_rows[si].stderrs.f1,
                                  mc_rows[si].stderrs.f2};
            const double pr[3] = {pred_rows[si].modes.f0,
                                  pred_rows[si].modes.f1,
                                  pred_rows[si].modes.f2};
            peak_f0_mc = std::max(peak_f0_mc, std::abs(mc_m[0]));
            mode2_residual =
                std::max(mode2_residual, std::abs(mc_m[2] - pr[2]));
            for (int m = 0; m < 3; ++m) {
                const double fit =
                    flags.fit_rel * std::abs(pr[m]) + flags.fit_floor * peak_f0;
                const double sigma =
                    std::sqrt(se[m] * se[m] + fit * fit);
                const double z =
                    sigma > 0.0 ? (mc_m[m] - pr[m]) / sigma : 0.0;
                if (m < 2 && std::abs(z) <= 3.0) ok[m] += 1;
                rows.push_back({"mode" + std::to_string(m),
                                format_real(mu_mid), "",
                                format_real(mc_m[m]), format_real(sigma),
                                format_real(pr[m]), format_real(z), "", ""});
            }
        }
        for (int m = 0; m < 2; ++m) {
            const double rate = static_cast<double>(ok[m]) / grid.n_mu;
            add_check("check:mode" + std::to_string(m) + "-pass-rate", rate,
                      flags.tol_pass_rate, rate >= flags.tol_pass_rate);
        }
        const double mode2_ratio =
            peak_f0_mc > 0.0 ? mode2_residual / peak_f0_mc : 0.0;
        add_check("check:mode2-weakness", mode2_ratio, flags.tol_mode2,
                  mode2_ratio <= flags.tol_mode2);

        // Energy: Monte Carlo albedo against the analytic hemispherical
        // integral (conservative-case terminated weight counts as escaped).
        double esc = d.escaped_weight, esc_sq = d.escaped_weight_sq;
        if (c >= 1.0 - 1e-12) {
            esc += d.terminated_weight;
            esc_sq += d.terminated_weight_sq;
        }
        const double albedo = esc / n;
        const double albedo_se = std::sqrt(
            std::max(0.0, esc_sq / n - albedo * albedo) / n);
        const double albedo_an = brdf::albedo_directional(flags.mu_i, params);
        const double albedo_err = std::abs(albedo - albedo_an);
        const bool albedo_pass =
            albedo_err <=
            std::max(3.0 * albedo_se, flags.tol_albedo_rel * albedo_an);
        all_pass = all_pass && albedo_pass;
        rows.push_back({"check:albedo", "", "", format_real(albedo),
                        format_real(albedo_se), format_real(albedo_an), "",
                        format_real(flags.tol_albedo_rel),
                        status_text(albedo_pass)});

        // Per-bin detail for plotting/regression diffs.
        for (int i = 0; i < grid.n_mu; ++i) {
            const double mu_mid =
                0.5 * (grid.mu_edges[static_cast<size_t>(i)] +
                       grid.mu_edges[static_cast<size_t>(i) + 1]);
            for (int j = 0; j < grid.n_phi; ++j) {
                const size_t b = static_cast<size_t>(grid.bin_index(i, j));
                const double phi_mid =
                    0.5 * (grid.phi_edges[static_cast<size_t>(j)] +
                           grid.phi_edges[static_cast<size_t>(j) + 1]);
                rows.push_back(
                    {"bin", format_real(mu_mid), format_real(phi_mid),
                     format_real(estimates[b].value),
                     format_real(estimates[b].stderr_value),
                     format_real(pred[b]), "", "", ""});
            }
        }
    }

    // Reciprocity of both evaluation paths on a fixed random pair grid.
    {
        Pcg32 rng(flags.seed, 2000);
        double worst_acc = 0.0, worst_fast = 0.0;
        for (int k = 0; k < 10000; ++k) {
            const double a = 1.0 - rng.next_double();
            const double b = 1.0 - rng.next_double();
            const double phi = 2.0 * kPi * rng.next_double() - kPi;
            const brdf::DirectionPair ab(a, b, phi), ba(b, a, phi);
            worst_acc = std::max(
                worst_acc, std::abs(brdf::eval_brdf_accurate(ab, params) -
                                    brdf::eval_brdf_accurate(ba, params)));
            worst_fast = std::max(
                worst_fast, std::abs(brdf::eval_brdf_fast(ab, params) -
                                     brdf::eval_brdf_fast(ba, params)));
        }
        add_check("check:reciprocity-accurate", worst_acc, flags.tol_recip,
                  worst_acc <= flags.tol_recip);
        add_check("check:reciprocity-fast", worst_fast, flags.tol_recip,
                  worst_fast <= flags.tol_recip);
    }

    write_csv(flags.out,
              {"record", "mu_o", "phi", "measured", "stderr", "analytic", "z",
               "bound", "status"},
              rows);
    write_manifest(
        flags.out, "validate-brdf",
        {{"c", format_real(c)},
         {"kd", format_real(params.kd)},
         {"mu-i", format_real(flags.mu_i)},
         {"paths", std::to_string(flags.paths)},
         {"seed", std::to_string(flags.seed)},
         {"bins", std::to_string(flags.bins_mu) + "x" +
                      std::to_string(flags.bins_phi)},
         {"max-collisions", std::to_string(flags.max_collisions)},
         {"workers", std::to_string(flags.workers)},
         {"out", flags.out}});
    log << "validate-brdf: c=" << format_real(c) << " paths=" << flags.paths
        << (all_pass ? ", all checks passed" : ", FAILURES present")
        << ", wrote " << flags.out << "\n";
    return all_pass ? 0 : 1;
}

int cmd_tables(const TablesFlags& flags, std::ostream& log) {
    const int grid = std::max(flags.grid, 2);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    if (flags.quantity == "constants") {
        header = {"c", "l", "m", "A", "B", "C", "D", "E", "F"};
        for (int i = 0; i < grid; ++i) {
            const double c = static_cast<double>(i) / (grid - 1);
            const auto [l, m] = brdf::constants_lm(c);
            const auto [a, e] = brdf::constants_AE(c);
            const auto bcdf = brdf::constants_BCDF(c);
            rows.push_back({format_real(c), format_real(l), format_real(m),
                            format_real(a), format_real(bcdf[0]),
                            format_real(bcdf[1]), format_real(bcdf[2]),
                            format_real(e), format_real(bcdf[3])});
        }
    } else if (flags.quantity == "albedo-map") {
        header = {"x", "c_to_kd", "kd_to_c", "roundtrip_c_err",
                  "roundtrip_kd_err"};
        for (int i = 0; i < grid; ++i) {
            const double x = static_cast<double>(i) / (grid - 1);
            const double kd = brdf::c_to_kd(x);
            const double cc = brdf::kd_to_c(x);
            rows.push_back(
                {format_real(x), format_real(kd), format_real(cc),
                 format_real(std::abs(brdf::kd_to_c(kd) - x)),
                 format_real(std::abs(brdf::c_to_kd(cc) - x))});
        }
    } else if (flags.quantity == "modes") {
        header = {"mu_i", "mu_o",     "f0_total",      "f0_multi",
                  "f1_total", "f1_multi", "f1_multi_fast"};
        for (int i = 1; i <= grid; ++i) {
            const double mu_i = static_cast<double>(i) / grid;
            for (int j = 1; j <= grid; ++j) {
                const double mu_o = static_cast<double>(j) / grid;
                rows.push_back(
                    {format_real(mu_i), format_real(mu_o),
                     format_real(brdf::f0_total(mu_i, mu_o, flags.c)),
                     format_real(brdf::f0_multi(mu_i, mu_o, flags.c)),
                     format_real(brdf::f1_total(mu_i, mu_o, flags.c)),
                     format_real(brdf::f1_multi(mu_i, mu_o, flags.c)),
                     format_real(brdf::f1_multi_fast(mu_i, mu_o, flags.c))});
            }
        }
    } else {
        log << "tables: unknown --quantity '" << flags.quantity << "'\n";
        return 2;
    }
    write_csv(flags.out, header, rows);
    write_manifest(flags.out, "tables",
                   {{"quantity", flags.quantity},
                    {"grid", std::to_string(flags.grid)},
                    {"c", format_real(flags.c)},
                    {"out", flags.out}});
    log << "tables: wrote " << rows.size() << " rows to " << flags.out
        << "\n";
    return 0;
}

std::vector<unsigned char> render_sphere_pixels(const RenderFlags& flags) {
    if (flags.size < 1) throw std::invalid_argument("render: size < 1");
    if (flags.variant != "accurate" && flags.variant != "fast" &&
        flags.variant != "lambertian")
        throw std::invalid_argument("render: unknown variant");
    const auto params = brdf::BrdfParams::from_kd(flags.kd);
    const Vec3 light = normalized(
        Vec3{flags.light[0], flags.light[1], flags.light[2]});
    const int size = flags.size;
    std::vector<unsigned char> pixels(
        static_cast<size_t>(size) * size * 3, 0);
    for (int row = 0; row < size; ++row) {
        const double y = 1.0 - 2.0 * (row + 0.5) / size;
        for (int col = 0; col < size; ++col) {
            const double x = -1.0 + 2.0 * (col + 0.5) / size;
            const double r_sq = x * x + y * y;
            if (r_sq > 1.0) continue;
            const Vec3 n{x, y, std::sqrt(1.0 - r_sq)};
            const double mu_i = dot(n, light);
            if (mu_i <= 0.0) continue;  // unlit
            const double mu_o = n.z;
            double value;
            if (flags.variant == "lambertian") {
                value = flags.kd / kPi * mu_i;
            } else {
                // Relative azimuth between the tangential projections of the
                // light and view directions.
                const Vec3 view{0.0, 0.0, 1.0};
                const Vec3 ti = light - mu_i * n;
                const Vec3 to = view - mu_o * n;
                double phi = 0.0;
                if (norm(ti) > 1e-9 && norm(to) > 1e-9)
                    phi = std::atan2(dot(cross(ti, to), n), dot(ti, to));
                const brdf::DirectionPair pair(std::max(mu_i, 1e-6),
                                               std::max(mu_o, 1e-6), phi);
                value = (flags.variant == "accurate"
                             ? brdf::eval_brdf_accurate(pair, params)
                             : brdf::eval_brdf_fast(pair, params)) *
                        mu_i;
            }
            // Linear to sRGB.
            const double lin = std::clamp(value, 0.0, 1.0);
            const double srgb =
                lin <= 0.0031308 ? 12.92 * lin
                                 : 1.055 * std::pow(lin, 1.0 / 2.4) - 0.055;
            const auto byte = static_cast<unsigned char>(
                std::lround(255.0 * std::clamp(srgb, 0.0, 1.0)));
            const size_t base =
                (static_cast<size_t>(row) * size + col) * 3;
            pixels[base] = pixels[base + 1] = pixels[base + 2] = byte;
        }
    }
    return pixels;
}

int cmd_render_sphere(const RenderFlags& flags, std::ostream& log) {
    const auto pixels = render_sphere_pixels(flags);
    std::ofstream out(flags.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + flags.out);
    out << "P6\n" << flags.size << " " << flags.size << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw std::runtime_error("write failed: " + flags.out);
    write_manifest(flags.out, "render-sphere",
                   {{"kd", format_real(flags.kd)},
                    {"light-dir", format_real(flags.light[0]) + "," +
                                      format_real(flags.light[1]) + "," +
                                      format_real(flags.light[2])},
                    {"variant", flags.variant},
                    {"size", std::to_string(flags.size)},
                    {"out", flags.out}});
    log << "render-sphere: wrote " << flags.out << " (" << flags.size << "x"
        << flags.size << ", " << flags.variant << ")\n";
    return 0;
}

int cmd_bench(const BenchFlags& flags, std::ostream& log) {
    const auto params = brdf::BrdfParams::from_kd(0.8);
    Pcg32 rng(flags.seed, 3000);
    std::vector<brdf::DirectionPair> pairs;
    pairs.reserve(4096);
    for (int i = 0; i < 4096; ++i)
        pairs.emplace_back(1.0 - rng.next_double(), 1.0 - rng.next_double(),
                           2.0 * kPi * rng.next_double() - kPi);
    const auto time_loop = [&](const char* name, auto&& f) {
        double sink = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        for (long long k = 0; k < flags.evals; ++k)
            sink += f(pairs[static_cast<size_t>(k) & 4095]);
        const auto t1 = std::chrono::steady_clock::now();
        const double sec =
            std::chrono::duration<double>(t1 - t0).count();
        log << name << ": " << flags.evals << " evals in " << format_real(sec)
            << " s (" << format_real(static_cast<double>(flags.evals) / sec)
            << " evals/s, checksum " << format_real(sink) << ")\n";
    };
    time_loop("single-scatter", [&](const brdf::DirectionPair& p) {
        return brdf::single_scatter(p, params.c);
    });
    time_loop("accurate", [&](const brdf::DirectionPair& p) {
        return brdf::eval_brdf_accurate(p, params);
    });
    time_loop("fast", [&](const brdf::DirectionPair& p) {
        return brdf::eval_brdf_fast(p, params);
    });
    return 0;
}

}  // namespace lsbrdf::cli
