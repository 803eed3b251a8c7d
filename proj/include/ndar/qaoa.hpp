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

#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/circuit.hpp"
#include "ndar/errors.hpp"
#include "ndar/ising.hpp"
#include "ndar/statevector.hpp"

namespace ndar {

/// energy(model, x) for every basis index, offset included.
inline std::vector<double> energy_diagonal(const IsingModel &model, std::size_t qubit_cap = kDefaultQubitCap) {
    check_qubit_cap(model.n(), qubit_cap, "energy_diagonal");
    const std::size_t dim = std::size_t{1} << model.n();
    std::vector<double> diag(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        diag[k] = energy(model, BitString::from_index(k, model.n()));
    }
    return diag;
}

inline double expectation(const StateVector &state, const std::vector<double> &diagonal) {
    double e = 0.0;
    for (std::size_t k = 0; k < state.dim(); ++k) {
        e += std::norm(state[k]) * diagonal[k];
    }
    return e;
}

namespace detail {

/// Diagonal without the offset, so a field-free, coupling-free model
/// gives exactly `offset` at every angle.
inline std::vector<double> offset_free_diagonal(const IsingModel &model, std::size_t qubit_cap) {
    return energy_diagonal(IsingModel(model.n(), model.fields(), model.couplings(), 0.0), qubit_cap);
}

} // namespace detail

/// <psi_p(gamma, beta)| H_C |psi_p(gamma, beta)> plus the model offset.
inline double qaoa_expectation(const IsingModel &model, const QaoaParams &params, std::size_t qubit_cap = kDefaultQubitCap) {
    const auto state = simulate(build_qaoa_circuit(model, params, qubit_cap), qubit_cap);
    return expectation(state, detail::offset_free_diagonal(model, qubit_cap)) + model.offset();
}

/// Inclusive linear grid over (gamma, beta) for p = 1.
struct ParamGrid {
    double gamma_min = -1.5707963267948966;
    double gamma_max = 1.5707963267948966;
    double beta_min = 0.0;
    double beta_max = 1.5707963267948966;
    std::size_t steps = 41;

    double gamma_at(std::size_t k) const { return at(gamma_min, gamma_max, k); }
    double beta_at(std::size_t k) const { return at(beta_min, beta_max, k); }

  private:
    double at(double lo, double hi, std::size_t k) const {
        if (steps == 1) {
            return lo;
        }
        return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
};

struct LandscapePoint {
    double gamma = 0.0;
    double beta = 0.0;
    double value = 0.0;
};

struct ParamSearchResult {
    QaoaParams best;
    double best_value = 0.0;
    /// steps * steps points, gamma-major.
    std::vector<LandscapePoint> landscape;
};

/**
 * Exhaustive p = 1 grid search over qaoa_expectation. Ties resolve to the
 * lexicographically smallest (gamma, beta).
 */
inline ParamSearchResult search_params(const IsingModel &model, const ParamGrid &grid, std::size_t qubit_cap = kDefaultQubitCap) {
    detail::require(grid.steps >= 1, "optimize_params: empty grid");
    check_qubit_cap(model.n(), qubit_cap, "optimize_params");
    const auto diagonal = detail::offset_free_diagonal(model, qubit_cap);
    ParamSearchResult result;
    result.landscape.reserve(grid.steps * grid.steps);
    bool have_best = false;
    double best_gamma = 0.0;
    double best_beta = 0.0;
    for (std::size_t a = 0; a < grid.steps; ++a) {
        const double gamma = grid.gamma_at(a);
        for (std::size_t b = 0; b < grid.steps; ++b) {
            const double beta = grid.beta_at(b);
            const QaoaParams params({gamma}, {beta});
            const double value =
                expectation(simulate(build_qaoa_circuit(model, params, qubit_cap), qubit_cap), diagonal) + model.offset();
            result.landscape.push_back({gamma, beta, value});
            const bool better = !have_best || value < result.best_value ||
                                (value == result.best_value && std::pair(gamma, beta) < std::pair(best_gamma, best_beta));
            if (better) {
                have_best = true;
                result.best_value = value;
                best_gamma = gamma;
                best_beta = beta;
            }
        }
    }
    result.best = QaoaParams({best_gamma}, {best_beta});
    return result;
}

inline QaoaParams optimize_params(const IsingModel &model, const ParamGrid &grid, std::size_t qubit_cap = kDefaultQubitCap) {
    return search_params(model, grid, qubit_cap).best;
}

} // namespace ndar
