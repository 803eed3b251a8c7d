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
 * Noise-directed adaptive remapping.
 *
 * Each iteration samples M strings against the current model H_{j-1}, takes
 * the lowest-energy one y_best and remaps H_j = P_y H_{j-1} P_y so that the
 * all-zeros noise attractor now carries energy(H_{j-1}, y_best). The
 * cumulative mask tracks the frame: energy(H_j, x) == energy(H_0, x ^ mask_j).
 *
 * Samplers:
 *  - QAOA: p-layer ansatz rebuilt from H_{j-1} every iteration with fixed
 *    angles, followed by bit decay with the damping strength.
 *  - Random circuit: one seeded circuit per run (or per iteration), then
 *    bit decay.
 *  - Classical Bernoulli: every bit is 0 with probability q. No damping.
 *  - Custom: caller-supplied sampler, then bit decay.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/circuit.hpp"
#include "ndar/damping.hpp"
#include "ndar/errors.hpp"
#include "ndar/ising.hpp"
#include "ndar/rng.hpp"
#include "ndar/statevector.hpp"

namespace ndar {

struct QaoaSampler {
    QaoaParams params;
};

struct RandomCircuitSampler {
    std::size_t depth = 2;
    /// Draw a new circuit every iteration instead of once per run.
    bool fresh_each_iteration = false;
};

struct BernoulliSampler {
    /// Probability that a bit is sampled as 0.
    double q = 0.95;
};

/// (current model, shots, seed) -> samples in the current frame.
using SampleFn = std::function<std::vector<BitString>(const IsingModel &, std::size_t, std::uint64_t)>;

struct CustomSampler {
    SampleFn fn;
};

struct SamplerSpec {
    std::variant<QaoaSampler, RandomCircuitSampler, BernoulliSampler, CustomSampler> kind;
    /// Ignored by BernoulliSampler.
    DampingSpec damping{};

    bool is_classical() const noexcept { return std::holds_alternative<BernoulliSampler>(kind); }

    void validate() const {
        if (const auto *b = std::get_if<BernoulliSampler>(&kind)) {
            detail::require(b->q >= 0.0 && b->q <= 1.0, "SamplerSpec: q must lie in [0, 1]");
        } else if (const auto *qa = std::get_if<QaoaSampler>(&kind)) {
            qa->params.validate();
        } else if (const auto *rc = std::get_if<RandomCircuitSampler>(&kind)) {
            detail::require(rc->depth >= 1, "SamplerSpec: random circuit depth must be at least 1");
        } else if (const auto *c = std::get_if<CustomSampler>(&kind)) {
            detail::require(static_cast<bool>(c->fn), "SamplerSpec: custom sampler has no function");
        }
        if (!is_classical()) {
            (void)damping.gamma();
        }
    }
};

struct NdarConfig {
    std::size_t shots = 1000;
    std::size_t max_iters = 10;
    std::uint64_t master_seed = 0;
    std::uint64_t run_index = 0;
    bool record_distributions = false;
    /// Stop after this many iterations without improving the cumulative
    /// best; 0 disables.
    std::size_t patience = 0;
    std::size_t qubit_cap = kDefaultQubitCap;
};

struct IterationRecord {
    /// 1-based.
    std::size_t iter_index = 0;
    /// y_best in the frame of H_{j-1}.
    BitString best_bits_current_frame;
    /// energy(H_{j-1}, y_best).
    double best_energy = 0.0;
    double best_cut = 0.0;
    /// min of best_energy over iterations 1..j.
    double cumulative_best_energy = 0.0;
    /// Mask after this iteration's remap; equals y_best mapped to the
    /// original frame.
    GaugeMask cumulative_mask;
    /// energy(H_{j-1}, 0...0).
    double attractor_energy = 0.0;
    /// Hamming weight of the attractor in the original frame (mask_{j-1}).
    std::size_t attractor_hamming_weight = 0;
    /// Sorted (energy, count) over all M samples.
    std::optional<std::vector<std::pair<double, std::size_t>>> energy_histogram;
    /// Counts by Hamming weight of the samples mapped to the original frame.
    std::optional<std::vector<std::size_t>> hamming_histogram;
};

struct NdarResult {
    std::vector<IterationRecord> trace;
    BitString best_bits_original_frame;
    double best_energy_overall = 0.0;
    GaugeMask final_mask;
};

/// x ^ mask: a string sampled in a remapped frame, in the original frame.
inline BitString map_to_original_frame(const BitString &x, const GaugeMask &mask) { return apply_mask(mask, x); }

/// Each bit independently 0 with probability q, 1 otherwise.
inline std::vector<BitString> classical_bernoulli_sample(std::size_t n, double q, std::size_t shots, std::uint64_t seed) {
    detail::require(q >= 0.0 && q <= 1.0, "classical_bernoulli_sample: q must lie in [0, 1]");
    Engine rng(seed);
    std::vector<BitString> out;
    out.reserve(shots);
    std::vector<std::uint8_t> bits(n);
    for (std::size_t s = 0; s < shots; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            bits[i] = uniform01(rng) < q ? 0 : 1;
        }
        out.emplace_back(bits);
    }
    return out;
}

namespace detail {

enum SeedStream : std::uint64_t { kSamplerStream = 1, kDecayStream = 2, kCircuitStream = 3 };

inline std::uint64_t stream_seed(const NdarConfig &config, std::uint64_t iter, SeedStream stream) {
    return derive_seed({config.master_seed, config.run_index, iter, static_cast<std::uint64_t>(stream)});
}

/// Lower energy, then lower Hamming weight, then lexicographic.
inline bool better_candidate(double e, std::size_t w, const BitString &x, double best_e, std::size_t best_w,
                             const BitString &best_x) {
    if (e != best_e) {
        return e < best_e;
    }
    if (w != best_w) {
        return w < best_w;
    }
    return x < best_x;
}

} // namespace detail

/**
 * Runs the remapping loop for config.max_iters iterations (or until the
 * patience criterion fires). Deterministic in (model0, sampler, config).
 */
inline NdarResult run_ndar(const IsingModel &model0, const SamplerSpec &sampler, const NdarConfig &config) {
    detail::require(config.max_iters >= 1, "run_ndar: max_iters must be at least 1");
    detail::require(config.shots >= 1, "run_ndar: shots must be at least 1");
    sampler.validate();
    const std::size_t n = model0.n();
    const bool circuit_sampler = std::holds_alternative<QaoaSampler>(sampler.kind) ||
                                 std::holds_alternative<RandomCircuitSampler>(sampler.kind);
    if (circuit_sampler) {
        check_qubit_cap(n, config.qubit_cap, "run_ndar");
    }
    const double decay = sampler.is_classical() ? 0.0 : sampler.damping.gamma();

    std::optional<std::vector<double>> fixed_probs;
    if (const auto *rc = std::get_if<RandomCircuitSampler>(&sampler.kind); rc != nullptr && !rc->fresh_each_iteration) {
        const auto circuit = build_random_circuit(n, rc->depth, detail::stream_seed(config, 0, detail::kCircuitStream));
        fixed_probs = simulate(circuit, config.qubit_cap).probabilities();
    }

    NdarResult result;
    IsingModel current = model0;
    GaugeMask mask = GaugeMask::identity(n);
    std::size_t best_iter = 0;
    std::size_t stale = 0;

    for (std::size_t j = 1; j <= config.max_iters; ++j) {
        const std::uint64_t sample_seed = detail::stream_seed(config, j, detail::kSamplerStream);
        std::vector<BitString> samples;
        if (const auto *b = std::get_if<BernoulliSampler>(&sampler.kind)) {
            samples = classical_bernoulli_sample(n, b->q, config.shots, sample_seed);
        } else {
            if (const auto *qa = std::get_if<QaoaSampler>(&sampler.kind)) {
                const auto state = simulate(build_qaoa_circuit(current, qa->params, config.qubit_cap), config.qubit_cap);
                samples = sample(state, config.shots, sample_seed);
            } else if (const auto *rc = std::get_if<RandomCircuitSampler>(&sampler.kind)) {
                if (fixed_probs) {
                    for (auto idx : sample_indices(*fixed_probs, config.shots, sample_seed)) {
                        samples.push_back(BitString::from_index(idx, n));
                    }
                } else {
                    const auto circuit = build_random_circuit(n, rc->depth, detail::stream_seed(config, j, detail::kCircuitStream));
                    samples = sample(simulate(circuit, config.qubit_cap), config.shots, sample_seed);
                }
            } else {
                samples = std::get<CustomSampler>(sampler.kind).fn(current, config.shots, sample_seed);
                for (const auto &x : samples) {
                    detail::require(x.size() == n, "run_ndar: custom sampler returned a string of the wrong length");
                }
                detail::require(!samples.empty(), "run_ndar: custom sampler returned no samples");
            }
            samples = apply_decay(samples, decay, detail::stream_seed(config, j, detail::kDecayStream));
        }

        const EnergyEvaluator evaluate(current);
        std::vector<double> energies(samples.size());
        std::size_t best = 0;
        std::size_t best_weight = 0;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const auto ones = samples[s].support();
            energies[s] = evaluate.energy_of_support(ones);
            if (s == 0 || detail::better_candidate(energies[s], ones.size(), samples[s], energies[best], best_weight, samples[best])) {
                best = s;
                best_weight = ones.size();
            }
        }

        IterationRecord rec;
        rec.iter_index = j;
        rec.best_bits_current_frame = samples[best];
        rec.best_energy = energy(current, samples[best]);
        rec.best_cut = -rec.best_energy;
        rec.attractor_energy = evaluate.zero_energy();
        rec.attractor_hamming_weight = hamming_weight(mask.bits());

        if (config.record_distributions) {
            std::map<double, std::size_t> by_energy;
            std::vector<std::size_t> by_weight(n + 1, 0);
            for (std::size_t s = 0; s < samples.size(); ++s) {
                ++by_energy[energies[s]];
                ++by_weight[hamming_distance(samples[s], mask.bits())];
            }
            rec.energy_histogram.emplace(by_energy.begin(), by_energy.end());
            rec.hamming_histogram = std::move(by_weight);
        }

        const GaugeMask y_best(samples[best]);
        current = gauge_transform(current, y_best);
        mask = compose_masks(mask, y_best);
        rec.cumulative_mask = mask;

        const bool improved = result.trace.empty() || rec.best_energy < result.best_energy_overall;
        if (improved) {
            result.best_energy_overall = rec.best_energy;
            best_iter = j - 1;
            stale = 0;
        } else {
            ++stale;
        }
        rec.cumulative_best_energy = result.best_energy_overall;
        result.trace.push_back(std::move(rec));

        if (config.patience > 0 && stale >= config.patience) {
            break;
        }
    }

    result.best_bits_original_frame = result.trace[best_iter].cumulative_mask.bits();
    result.final_mask = mask;
    return result;
}

} // namespace ndar
