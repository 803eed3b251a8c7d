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
 * Dense statevector evolution and Born-rule sampling.
 *
 * Amplitude index k holds basis state |x> with x_i = bit i of k, so qubit i
 * is bit i of every sampled BitString.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/circuit.hpp"
#include "ndar/errors.hpp"
#include "ndar/rng.hpp"

namespace ndar {

using Complex = std::complex<double>;

class StateVector {
  public:
    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n) : n_(n), amps_(std::size_t{1} << n, Complex{0.0, 0.0}) { amps_[0] = 1.0; }

    StateVector(std::size_t n, std::vector<Complex> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
        detail::require(amps_.size() == (std::size_t{1} << n), "StateVector: expected 2^n amplitudes");
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    const Complex &operator[](std::size_t k) const noexcept { return amps_[k]; }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(amps_.size());
        for (std::size_t k = 0; k < amps_.size(); ++k) {
            p[k] = std::norm(amps_[k]);
        }
        return p;
    }

    /// In-place 2x2 unitary {m00, m01, m10, m11} on qubit q.
    void apply_single(std::uint32_t q, const std::array<Complex, 4> &m) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
            for (std::size_t k = base; k < base + stride; ++k) {
                const Complex a0 = amps_[k];
                const Complex a1 = amps_[k + stride];
                amps_[k] = m[0] * a0 + m[1] * a1;
                amps_[k + stride] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    void apply(const Gate &g) {
        const std::uint32_t q0 = g.targets[0];
        const std::uint32_t q1 = g.targets[1];
        switch (g.kind) {
        case GateKind::RZZ: {
            const Complex same = std::polar(1.0, -g.theta / 2.0);
            const Complex diff = std::polar(1.0, g.theta / 2.0);
            for (std::size_t k = 0; k < amps_.size(); ++k) {
                const bool parity = (((k >> q0) ^ (k >> q1)) & 1U) != 0;
                amps_[k] *= parity ? diff : same;
            }
            return;
        }
        case GateKind::CX: {
            const std::size_t cbit = std::size_t{1} << q0;
            const std::size_t tbit = std::size_t{1} << q1;
            for (std::size_t k = 0; k < amps_.size(); ++k) {
                if ((k & cbit) != 0 && (k & tbit) == 0) {
                    std::swap(amps_[k], amps_[k | tbit]);
                }
            }
            return;
        }
        case GateKind::CZ: {
            const std::size_t mask = (std::size_t{1} << q0) | (std::size_t{1} << q1);
            for (std::size_t k = 0; k < amps_.size(); ++k) {
                if ((k & mask) == mask) {
                    amps_[k] = -amps_[k];
                }
            }
            return;
        }
        default:
            apply_single(q0, single_qubit_matrix(g.kind, g.theta));
        }
    }

    static std::array<Complex, 4> single_qubit_matrix(GateKind kind, double theta) {
        using namespace std::complex_literals;
        const double r = 1.0 / std::numbers::sqrt2;
        const double c = std::cos(theta / 2.0);
        const double s = std::sin(theta / 2.0);
        switch (kind) {
        case GateKind::H: return {r, r, r, -r};
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y: return {0.0, -1i, 1i, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S: return {1.0, 0.0, 0.0, 1i};
        case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
        case GateKind::RX: return {c, -1i * s, -1i * s, c};
        case GateKind::RY: return {c, -s, s, c};
        case GateKind::RZ: return {std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0)};
        default: break;
        }
        throw std::invalid_argument("single_qubit_matrix: not a single-qubit gate");
    }

  private:
    std::size_t n_ = 0;
    std::vector<Complex> amps_;
};

/// Evolves |0...0> through every gate of the circuit.
inline StateVector simulate(const Circuit &circuit, std::size_t qubit_cap = kDefaultQubitCap) {
    check_qubit_cap(circuit.n(), qubit_cap, "simulate");
    StateVector state(circuit.n());
    for (const auto &g : circuit.gates()) {
        state.apply(g);
    }
    return state;
}

/// Draws basis-state indices i.i.d. from a (not necessarily normalized)
/// probability vector by inverting its cumulative sum.
inline std::vector<std::uint64_t> sample_indices(std::span<const double> probs, std::size_t shots, std::uint64_t seed) {
    detail::require(shots >= 1, "sample: shots must be at least 1");
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    detail::require(acc > 0.0, "sample: distribution has zero mass");
    Engine rng(seed);
    std::vector<std::uint64_t> out(shots);
    for (auto &idx : out) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // Skip over trailing zero-probability entries when u lands on the end.
        if (it == cdf.end()) {
            it = std::lower_bound(cdf.begin(), cdf.end(), acc);
        }
        idx = static_cast<std::uint64_t>(it - cdf.begin());
    }
    return out;
}

/// Born-rule measurement of every qubit, `shots` times.
inline std::vector<BitString> sample(const StateVector &state, std::size_t shots, std::uint64_t seed) {
    const auto probs = state.probabilities();
    const auto indices = sample_indices(probs, shots, seed);
    std::vector<BitString> out;
    out.reserve(shots);
    for (auto idx : indices) {
        out.push_back(BitString::from_index(idx, state.n()));
    }
    return out;
}

} // namespace ndar
