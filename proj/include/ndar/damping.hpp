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
 * Delay-induced amplitude damping ahead of a computational-basis
 * measurement.
 *
 * Single-qubit amplitude damping with strength gamma, applied to every qubit
 * right before measuring in the Z basis, leaves the measured distribution
 * equal to that of an independent 1 -> 0 decay of each measured bit with
 * probability gamma. apply_decay() is that classical channel on samples;
 * density_matrix_reference() is the Kraus-operator route kept as an oracle.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/circuit.hpp"
#include "ndar/errors.hpp"
#include "ndar/rng.hpp"
#include "ndar/statevector.hpp"

namespace ndar {

/// Delay and relaxation time, both in microseconds.
struct DampingSpec {
    double t_delay_us = 0.0;
    double t1_us = 180.0;

    double gamma() const;
};

/// 1 - exp(-t_delay / t1), clamped to [0, 1].
inline double damping_gamma(const DampingSpec &spec) {
    detail::require(spec.t1_us > 0.0, "damping_gamma: T1 must be positive");
    detail::require(spec.t_delay_us >= 0.0, "damping_gamma: delay must be non-negative");
    const double g = -std::expm1(-spec.t_delay_us / spec.t1_us);
    return std::clamp(g, 0.0, 1.0);
}

inline double DampingSpec::gamma() const { return damping_gamma(*this); }

/// Flips each 1-bit to 0 independently with probability gamma.
inline std::vector<BitString> apply_decay(std::span<const BitString> samples, double gamma, std::uint64_t seed) {
    detail::require(gamma >= 0.0 && gamma <= 1.0, "apply_decay: gamma must lie in [0, 1]");
    std::vector<BitString> out(samples.begin(), samples.end());
    if (gamma == 0.0) {
        return out;
    }
    Engine rng(seed);
    for (auto &x : out) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != 0 && uniform01(rng) < gamma) {
                x.set(i, false);
            }
        }
    }
    return out;
}

/**
 * Outcome distribution after the bit-decay channel, computed exactly:
 * P'(y) = sum over x covering y of P(x) gamma^{|x|-|y|} (1-gamma)^{|y|}.
 * Applied one qubit at a time, each step moves gamma of the mass on
 * bit-set states onto the same state with that bit cleared.
 */
inline std::vector<double> decayed_distribution(std::span<const double> probs, std::size_t n, double gamma) {
    detail::require(gamma >= 0.0 && gamma <= 1.0, "decayed_distribution: gamma must lie in [0, 1]");
    detail::require(probs.size() == (std::size_t{1} << n), "decayed_distribution: expected 2^n probabilities");
    std::vector<double> p(probs.begin(), probs.end());
    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if ((k & bit) != 0) {
                const double moved = gamma * p[k];
                p[k] -= moved;
                p[k ^ bit] += moved;
            }
        }
    }
    return p;
}

/// Largest n accepted by density_matrix_reference (4^n complex entries).
inline constexpr std::size_t kDensityMatrixMaxQubits = 6;

/**
 * Exact outcome probabilities of the circuit followed by amplitude damping
 * on every qubit, via rho -> K0 rho K0^+ + K1 rho K1^+ with
 * K0 = diag(1, sqrt(1 - gamma)) and K1 = sqrt(gamma) |0><1|.
 */
inline std::vector<double> density_matrix_reference(const Circuit &circuit, double gamma) {
    detail::require(gamma >= 0.0 && gamma <= 1.0, "density_matrix_reference: gamma must lie in [0, 1]");
    if (circuit.n() > kDensityMatrixMaxQubits) {
        throw ResourceError("density_matrix_reference: " + std::to_string(circuit.n()) + " qubits exceeds the limit of " +
                            std::to_string(kDensityMatrixMaxQubits));
    }
    const std::size_t n = circuit.n();
    const std::size_t dim = std::size_t{1} << n;
    const StateVector psi = simulate(circuit);

    std::vector<Complex> rho(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            rho[r * dim + c] = psi[r] * std::conj(psi[c]);
        }
    }

    const double keep = std::sqrt(1.0 - gamma);
    const double lower = std::sqrt(gamma);
    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        // Kraus operators are real and act on one qubit, so (K rho K^+)_{rc}
        // only mixes entries whose row and column differ from (r, c) in bit q.
        std::vector<Complex> next(dim * dim, Complex{0.0, 0.0});
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                const Complex v = rho[r * dim + c];
                if (v == Complex{0.0, 0.0}) {
                    continue;
                }
                const bool rb = (r & bit) != 0;
                const bool cb = (c & bit) != 0;
                // K0 branch.
                next[r * dim + c] += v * (rb ? keep : 1.0) * (cb ? keep : 1.0);
                // K1 branch: only |1><1| components survive, landing on |0><0|.
                if (rb && cb) {
                    next[(r ^ bit) * dim + (c ^ bit)] += v * lower * lower;
                }
            }
        }
        rho.swap(next);
    }

    std::vector<double> diag(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        diag[k] = rho[k * dim + k].real();
    }
    return diag;
}

} // namespace ndar
