// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsbrdf/mcref.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lsbrdf/phase.hpp"
#include "lsbrdf/rng.hpp"
#include "lsbrdf/vec3.hpp"

namespace lsbrdf::mc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed chunk size decouples the random-stream layout from the worker count.
constexpr long long kChunkSize = 65536;

struct ChunkTally {
    std::vector<double> weights;
    std::vector<double> squared_weights;
    BinGrid::Diagnostics diag;
};

void validate(double mu_i, double c, const McConfig& cfg) {
    if (!(mu_i > 0.0 && mu_i <= 1.0))
        throw std::invalid_argument("simulate_halfspace: mu_i not in (0, 1]");
    if (!(c >= 0.0 && c <= 1.0))
        throw std::invalid_argument("simulate_halfspace: c not in [0, 1]");
    if (cfg.n_paths < 1)
        throw std::invalid_argument("simulate_halfspace: n_paths < 1");
    if (!(cfg.roulette_survival > 0.0 && cfg.roulette_survival <= 1.0))
        throw std::invalid_argument(
            "simulate_halfspace: roulette_survival not in (0, 1]");
    if (cfg.n_workers < 1)
        throw std::invalid_argument("simulate_halfspace: n_workers < 1");
}

void run_chunk(double mu_i, double c, const McConfig& cfg, long long chunk,
               long long paths_in_chunk, int n_mu, int n_phi, ChunkTally& out) {
    Pcg32 rng(cfg.seed, static_cast<std::uint64_t>(chunk));
    out.weights.assign(static_cast<size_t>(n_mu) * n_phi, 0.0);
    out.squared_weights.assign(static_cast<size_t>(n_mu) * n_phi, 0.0);
    auto& d = out.diag;
    d = BinGrid::Diagnostics{};
    d.n_paths = paths_in_chunk;

    const double s_i = std::sqrt(std::max(0.0, 1.0 - mu_i * mu_i));
    for (long long p = 0; p < paths_in_chunk; ++p) {
        Vec3 dir{-s_i, 0.0, -mu_i};
        double z = 0.0;
        double w = 1.0;
        long long collisions = 0;
        for (;;) {
            const double flight = -std::log(1.0 - rng.next_double());
            if (dir.z > 0.0) {
                const double to_surface = -z / dir.z;
                if (flight >= to_surface) {
                    // Escape: bin by outgoing (mu_o, phi).
                    const double mu_o = dir.z;
                    const double phi = std::atan2(dir.y, dir.x);
                    const int i_mu = std::clamp(
                        static_cast<int>(mu_o * n_mu), 0, n_mu - 1);
                    const int i_phi = std::clamp(
                        static_cast<int>((phi + kPi) / (2.0 * kPi) * n_phi), 0,
                        n_phi - 1);
                    const size_t bin =
                        static_cast<size_t>(i_mu) * n_phi + i_phi;
                    out.weights[bin] += w;
                    out.squared_weights[bin] += w * w;
                    d.escaped_weight += w;
                    d.escaped_weight_sq += w * w;
                    d.n_escaped += 1;
                    break;
                }
            }
            z += flight * dir.z;

            // Collision.
            if (cfg.max_collisions > 0 && collisions >= cfg.max_collisions) {
                d.terminated_weight += w;
                d.terminated_weight_sq += w * w;
                d.n_terminated += 1;
                break;
            }
            collisions += 1;
            d.absorbed_weight += w * (1.0 - c);
            w *= c;
            if (w <= 0.0) {
                // Fully absorbed (c = 0); nothing left to follow.
                break;
            }
            if (w < cfg.roulette_threshold) {
                if (rng.next_double() < cfg.roulette_survival) {
                    const double boosted = w / cfg.roulette_survival;
                    d.roulette_boost_weight += boosted - w;
                    w = boosted;
                } else {
                    d.roulette_killed_weight += w;
                    break;
                }
            }
            const double mu_s = phase::sample_mu_exact(
                rng.next_double(), rng.next_double(), rng.next_double());
            const double azimuth = 2.0 * kPi * rng.next_double();
            dir = phase::rotate_about(dir, mu_s, azimuth);
        }
        d.total_collisions += collisions;
        d.max_collision_count = std::max(d.max_collision_count, collisions);
    }
}

}  // namespace

BinGrid simulate_halfspace(double mu_i, double c, const McConfig& cfg,
                           int n_mu_bins, int n_phi_bins) {
    validate(mu_i, c, cfg);
    if (n_mu_bins < 1 || n_phi_bins < 1)
        throw std::invalid_argument("simulate_halfspace: bad bin counts");

    const long long n_chunks = (cfg.n_paths + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkTally> tallies(static_cast<size_t>(n_chunks));

    std::atomic<long long> next_chunk{0};
    const auto worker = [&] {
        for (;;) {
            const long long k = next_chunk.fetch_add(1);
            if (k >= n_chunks) return;
            const long long begin = k * kChunkSize;
            const long long count =
                std::min(kChunkSize, cfg.n_paths - begin);
            run_chunk(mu_i, c, cfg, k, count, n_mu_bins, n_phi_bins,
                      tallies[static_cast<size_t>(k)]);
        }
    };
    const int workers =
        static_cast<int>(std::min<long long>(cfg.n_workers, n_chunks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BinGrid grid;
    grid.n_mu = n_mu_bins;
    grid.n_phi = n_phi_bins;
    grid.mu_edges.resize(static_cast<size_t>(n_mu_bins) + 1);
    for (int i = 0; i <= n_mu_bins; ++i)
        grid.mu_edges[static_cast<size_t>(i)] =
            static_cast<double>(i) / n_mu_bins;
    grid.phi_edges.resize(static_cast<size_t>(n_phi_bins) + 1);
    for (int i = 0; i <= n_phi_bins; ++i)
        grid.phi_edges[static_cast<size_t>(i)] =
            -kPi + 2.0 * kPi * i / n_phi_bins;
    grid.weights.assign(static_cast<size_t>(n_mu_bins) * n_phi_bins, 0.0);
    grid.squared_weights.assign(grid.weights.size(), 0.0);

    // Merge in chunk order: the result is independent of which worker ran
    // which chunk.
    for (const auto& tally : tallies) {
        for (size_t b = 0; b < grid.weights.size(); ++b) {
            grid.weights[b] += tally.weights[b];
            grid.squared_weights[b] += tally.squared_weights[b];
        }
        auto& d = grid.diag;
        const auto& e = tally.diag;
        d.escaped_weight += e.escaped_weight;
        d.absorbed_weight += e.absorbed_weight;
        d.roulette_killed_weight += e.roulette_killed_weight;
        d.roulette_boost_weight += e.roulette_boost_weight;
        d.terminated_weight += e.terminated_weight;
        d.escaped_weight_sq += e.escaped_weight_sq;
        d.terminated_weight_sq += e.terminated_weight_sq;
        d.n_paths += e.n_paths;
        d.n_escaped += e.n_escaped;
        d.n_terminated += e.n_terminated;
        d.total_collisions += e.total_collisions;
        d.max_collision_count =
            std::max(d.max_collision_count, e.max_collision_count);
    }
    return grid;
}

std::vector<BrdfEstimate> estimate_brdf(const BinGrid& grid,
                                        long long n_paths) {
    if (n_paths < 1) throw std::invalid_argument("estimate_brdf: n_paths < 1");
    std::vector<BrdfEstimate> result(grid.weights.size());
    const double n = static_cast<double>(n_paths);
    for (int i = 0; i < grid.n_mu; ++i) {
        const double mu_mid = 0.5 * (grid.mu_edges[static_cast<size_t>(i)] +
                                     grid.mu_edges[static_cast<size_t>(i) + 1]);
        const double d_mu = grid.mu_edges[static_cast<size_t>(i) + 1] -
                            grid.mu_edges[static_cast<size_t>(i)];
        for (int j = 0; j < grid.n_phi; ++j) {
            const double d_phi = grid.phi_edges[static_cast<size_t>(j) + 1] -
                                 grid.phi_edges[static_cast<size_t>(j)];
            const size_t b = static_cast<size_t>(grid.bin_index(i, j));
            const double scale = 1.0 / (n * mu_mid * d_mu * d_phi);
            const double w = grid.weights[b];
            const double w2 = grid.squared_weights[b];
            // Per-path deposit variance: each path deposits at most once.
            const double var = std::max(0.0, w2 - w * w / n);
            result[b].value = w * scale;
            result[b].stderr_value = std::sqrt(var) * scale;
        }
    }
    return result;
}

std::vector<ModeRow> fourier_project(const BinGrid& grid, long long n_paths) {
    const auto estimates = estimate_brdf(grid, n_paths);
    std::vector<ModeRow> rows(static_cast<size_t>(grid.n_mu));
    for (int i = 0; i < grid.n_mu; ++i) {
        double acc[3] = {0.0, 0.0, 0.0};
        double var[3] = {0.0, 0.0, 0.0};
        for (int j = 0; j < grid.n_phi; ++j) {
            const size_t b = static_cast<size_t>(grid.bin_index(i, j));
            const double phi_mid =
                0.5 * (grid.phi_edges[static_cast<size_t>(j)] +
                       grid.phi_edges[static_cast<size_t>(j) + 1]);
            const double d_phi = grid.phi_edges[static_cast<size_t>(j) + 1] -
                                 grid.phi_edges[static_cast<size_t>(j)];
            const double coef[3] = {d_phi / (2.0 * kPi),
                                    d_phi / kPi * std::cos(phi_mid),
                                    d_phi / kPi * std::cos(2.0 * phi_mid)};
            for (int m = 0; m < 3; ++m) {
                acc[m] += coef[m] * estimates[b].value;
                var[m] += coef[m] * coef[m] * estimates[b].stderr_value *
                          estimates[b].stderr_value;
            }
        }
        rows[static_cast<size_t>(i)].modes = {acc[0], acc[1], acc[2]};
        rows[static_cast<size_t>(i)].stderrs = {
            std::sqrt(var[0]), std::sqrt(var[1]), std::sqrt(var[2])};
    }
    return rows;
}

AlbedoEstimate albedo_mc(double mu_i, double c, const McConfig& cfg) {
    const BinGrid grid = simulate_halfspace(mu_i, c, cfg, 1, 1);
    const auto& d = grid.diag;
    const double n = static_cast<double>(d.n_paths);
    double w = d.escaped_weight;
    double w2 = d.escaped_weight_sq;
    if (c >= 1.0 - 1e-12) {
        // Conservative medium: terminated paths still carry their full
        // weight and would escape with probability 1.
        w += d.terminated_weight;
        w2 += d.terminated_weight_sq;
    }
    const double mean = w / n;
    const double var = std::max(0.0, w2 / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

}  // namespace lsbrdf::mc
