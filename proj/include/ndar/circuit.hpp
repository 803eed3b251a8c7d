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
 * Gate-level circuits: the p-layer QAOA ansatz for an Ising model and
 * seeded random circuits over a fixed gate set.
 *
 * Rotation conventions: RX(t) = exp(-i t X / 2), RY(t) = exp(-i t Y / 2),
 * RZ(t) = exp(-i t Z / 2), RZZ(t) = exp(-i t Z(x)Z / 2). For two-qubit
 * gates, targets[0] is the control of CX.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "ndar/errors.hpp"
#include "ndar/ising.hpp"
#include "ndar/rng.hpp"

namespace ndar {

enum class GateKind : std::uint8_t { H, X, Y, Z, S, T, RX, RY, RZ, RZZ, CX, CZ };

constexpr bool is_two_qubit(GateKind k) noexcept { return k == GateKind::RZZ || k == GateKind::CX || k == GateKind::CZ; }
constexpr bool is_parametric(GateKind k) noexcept {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::RZZ;
}

constexpr std::string_view gate_name(GateKind k) noexcept {
    switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::T: return "t";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::RZZ: return "rzz";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    }
    return "?";
}

struct Gate {
    GateKind kind = GateKind::H;
    std::array<std::uint32_t, 2> targets{0, 0};
    double theta = 0.0;

    static Gate one(GateKind k, std::uint32_t q, double theta = 0.0) { return {k, {q, q}, theta}; }
    static Gate two(GateKind k, std::uint32_t a, std::uint32_t b, double theta = 0.0) { return {k, {a, b}, theta}; }

    std::size_t arity() const noexcept { return is_two_qubit(kind) ? 2 : 1; }

    friend bool operator==(const Gate &, const Gate &) = default;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t n) : n_(n) {}

    std::size_t n() const noexcept { return n_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }

    Circuit &add(const Gate &g) {
        detail::require(g.targets[0] < n_, "Circuit: gate target out of range");
        detail::require(std::isfinite(g.theta), "Circuit: gate angle must be finite");
        if (g.arity() == 2) {
            detail::require(g.targets[1] < n_, "Circuit: gate target out of range");
            detail::require(g.targets[0] != g.targets[1], "Circuit: two-qubit gate needs distinct targets");
        }
        gates_.push_back(g);
        return *this;
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<Gate> gates_;
};

/// Default cap on statevector simulation (2^22 amplitudes).
inline constexpr std::size_t kDefaultQubitCap = 22;

inline void check_qubit_cap(std::size_t n, std::size_t cap, const char *who) {
    if (n > cap) {
        throw ResourceError(std::string(who) + ": " + std::to_string(n) + " qubits exceeds the simulator cap of " +
                            std::to_string(cap));
    }
}

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    QaoaParams() = default;
    QaoaParams(std::vector<double> g, std::vector<double> b) : gammas(std::move(g)), betas(std::move(b)) {
        validate();
    }

    std::size_t layers() const noexcept { return gammas.size(); }

    void validate() const {
        detail::require(!gammas.empty(), "QaoaParams: need at least one layer");
        detail::require(gammas.size() == betas.size(), "QaoaParams: gammas and betas must have equal length");
        for (std::size_t l = 0; l < gammas.size(); ++l) {
            detail::require(std::isfinite(gammas[l]) && std::isfinite(betas[l]), "QaoaParams: angles must be finite");
        }
    }

    friend bool operator==(const QaoaParams &, const QaoaParams &) = default;
};

/**
 * H on every qubit, then per layer: RZ(2 gamma h_i) for nonzero fields,
 * RZZ(2 gamma J_ij) for every coupling, RX(2 beta) on every qubit. This is
 * prod_l exp(-i beta_l sum X) exp(-i gamma_l H_C) |+>^n up to a global phase.
 */
inline Circuit build_qaoa_circuit(const IsingModel &model, const QaoaParams &params, std::size_t qubit_cap = kDefaultQubitCap) {
    params.validate();
    check_qubit_cap(model.n(), qubit_cap, "build_qaoa_circuit");
    Circuit c(model.n());
    for (std::uint32_t q = 0; q < model.n(); ++q) {
        c.add(Gate::one(GateKind::H, q));
    }
    for (std::size_t l = 0; l < params.layers(); ++l) {
        const double gamma = params.gammas[l];
        const double beta = params.betas[l];
        for (std::uint32_t q = 0; q < model.n(); ++q) {
            if (model.fields()[q] != 0.0) {
                c.add(Gate::one(GateKind::RZ, q, 2.0 * gamma * model.fields()[q]));
            }
        }
        for (const auto &cp : model.couplings()) {
            c.add(Gate::two(GateKind::RZZ, cp.i, cp.j, 2.0 * gamma * cp.value));
        }
        for (std::uint32_t q = 0; q < model.n(); ++q) {
            c.add(Gate::one(GateKind::RX, q, 2.0 * beta));
        }
    }
    return c;
}

/// Gate set drawn by build_random_circuit.
inline constexpr std::array<GateKind, 11> kRandomGateSet{GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,
                                                         GateKind::S,  GateKind::T,  GateKind::RX, GateKind::RY,
                                                         GateKind::RZ, GateKind::CX, GateKind::CZ};

/**
 * `depth` layers. Each layer walks the qubits in a fresh random order and
 * gives every qubit not yet used in that layer a uniformly drawn gate; a
 * two-qubit draw takes the next unused qubit in the order as partner. When
 * no partner is left the draw is repeated among single-qubit gates, so
 * every qubit is touched in every layer.
 */
inline Circuit build_random_circuit(std::size_t n, std::size_t depth, std::uint64_t seed) {
    detail::require(depth >= 1, "build_random_circuit: depth must be at least 1");
    Engine rng(seed);
    Circuit c(n);
    std::vector<std::uint32_t> order(n);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        for (std::uint32_t q = 0; q < n; ++q) {
            order[q] = q;
        }
        shuffle(order.begin(), order.end(), rng);
        std::size_t pos = 0;
        while (pos < n) {
            const std::uint32_t q = order[pos];
            const bool partner_available = pos + 1 < n;
            GateKind kind = kRandomGateSet[uniform_below(rng, kRandomGateSet.size())];
            if (is_two_qubit(kind) && !partner_available) {
                kind = kRandomGateSet[uniform_below(rng, kRandomGateSet.size() - 2)];
            }
            const double theta = is_parametric(kind) ? 2.0 * std::numbers::pi * uniform01(rng) : 0.0;
            if (is_two_qubit(kind)) {
                c.add(Gate::two(kind, q, order[pos + 1], theta));
                pos += 2;
            } else {
                c.add(Gate::one(kind, q, theta));
                pos += 1;
            }
        }
    }
    return c;
}

} // namespace ndar
