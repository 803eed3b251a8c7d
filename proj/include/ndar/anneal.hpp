// Copyright 2026 The NDAR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Single-flip Metropolis simulated annealing on an Ising model.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/errors.hpp"
#include "ndar/ising.hpp"
#include "ndar/rng.hpp"

namespace ndar {

struct SaConfig {
    std::size_t num_reads = 100;
    std::size_t sweeps_per_read = 1000;
    double beta_min = 0.01;
    double beta_max = 10.0;
    std::uint64_t seed = 0;
    /// Worker threads for independent reads; the result does not depend on it.
    std::size_t threads = 1;

    void validate() const {
        detail::require(num_reads >= 1, "SaConfig: num_reads must be at least 1");
        detail::require(sweeps_per_read >= 1, "SaConfig: sweeps_per_read must be at least 1");
        detail::require(beta_min > 0.0 && std::isfinite(beta_min), "SaConfig: beta_min must be positive");
        detail::require(beta_max >= beta_min && std::isfinite(beta_max), "SaConfig: beta_max must be >= beta_min");
    }
};

struct SaResult {
    BitString bits;
    double energy = 0.0;
};

namespace detail {

struct Neighbor {
    std::uint32_t node;
    double coupling;
};

/// One annealing read from a random start; returns the final configuration.
inline BitString anneal_read(const IsingModel &model, const std::vector<std::vector<Neighbor>> &adjacency,
                             const SaConfig &config, std::uint64_t seed) {
    const std::size_t n = model.n();
    Engine rng(seed);
    std::vector<double> s(n);
    for (auto &v : s) {
        v = (rng() >> 63) != 0 ? -1.0 : 1.0;
    }
    // local[i] = h_i + sum_j J_ij s_j; flipping i changes E by -2 s_i local[i].
    std::vector<double> local(model.fields());
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto &nb : adjacency[i]) {
            local[i] += nb.coupling * s[nb.node];
        }
    }
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    const double ratio = config.sweeps_per_read > 1
                             ? std::pow(config.beta_max / config.beta_min, 1.0 / static_cast<double>(config.sweeps_per_read - 1))
                             : 1.0;
    double beta = config.sweeps_per_read > 1 ? config.beta_min : config.beta_max;
    for (std::size_t sweep = 0; sweep < config.sweeps_per_read; ++sweep) {
        shuffle(order.begin(), order.end(), rng);
        for (const auto i : order) {
            const double delta = -2.0 * s[i] * local[i];
            if (delta <= 0.0 || uniform01(rng) < std::exp(-beta * delta)) {
                s[i] = -s[i];
                const double change = 2.0 * s[i];
                for (const auto &nb : adjacency[i]) {
                    local[nb.node] += nb.coupling * change;
                }
            }
        }
        beta *= ratio;
    }
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.set(i, s[i] < 0.0);
    }
    return x;
}

} // namespace detail

/**
 * Best final state over `num_reads` independent reads, each annealed with a
 * geometric inverse-temperature schedule from beta_min to beta_max. Ties go
 * to the lexicographically smallest string. The returned energy is
 * energy(model, bits) and includes the offset.
 */
inline SaResult sa_solve(const IsingModel &model, const SaConfig &config) {
    config.validate();
    const std::size_t n = model.n();
    std::vector<std::vector<detail::Neighbor>> adjacency(n);
    for (const auto &c : model.couplings()) {
        adjacency[c.i].push_back({c.j, c.value});
        adjacency[c.j].push_back({c.i, c.value});
    }

    std::vector<BitString> finals(config.num_reads);
    auto work = [&](std::size_t worker, std::size_t workers) {
        for (std::size_t r = worker; r < config.num_reads; r += workers) {
            finals[r] = detail::anneal_read(model, adjacency, config, derive_seed({config.seed, r}));
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, config.num_reads));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work, w, workers);
        }
    }

    SaResult best{finals[0], energy(model, finals[0])};
    for (std::size_t r = 1; r < finals.size(); ++r) {
        const double e = energy(model, finals[r]);
        if (e < best.energy || (e == best.energy && finals[r] < best.bits)) {
            best = {finals[r], e};
        }
    }
    return best;
}

} // namespace ndar
