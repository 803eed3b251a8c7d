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
 * Ising cost functions and bit-flip gauge transformations.
 *
 * The cost of a bit string x is
 *
 *     E(x) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j,   s_i = 1 - 2 x_i,
 *
 * which is also the diagonal of the Z / ZZ cost Hamiltonian. Everything in
 * the library minimizes E.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/errors.hpp"

namespace ndar {

struct Coupling {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double value = 0.0;

    friend bool operator==(const Coupling &, const Coupling &) = default;
};

class IsingModel {
  public:
    IsingModel() = default;

    IsingModel(std::size_t n, std::vector<double> fields, std::vector<Coupling> couplings, double offset = 0.0)
        : n_(n), fields_(std::move(fields)), couplings_(std::move(couplings)), offset_(offset) {
        detail::require(fields_.size() == n_, "IsingModel: expected one field per spin");
        detail::require(std::isfinite(offset_), "IsingModel: offset must be finite");
        for (double h : fields_) {
            detail::require(std::isfinite(h), "IsingModel: fields must be finite");
        }
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto &c : couplings_) {
            detail::require(c.i < c.j, "IsingModel: couplings need i < j");
            detail::require(c.j < n_, "IsingModel: coupling index out of range");
            detail::require(std::isfinite(c.value), "IsingModel: couplings must be finite");
            detail::require(seen.emplace(c.i, c.j).second, "IsingModel: duplicate coupling");
        }
    }

    /// Model with no field or coupling terms.
    static IsingModel empty(std::size_t n, double offset = 0.0) { return IsingModel(n, std::vector<double>(n, 0.0), {}, offset); }

    std::size_t n() const noexcept { return n_; }
    const std::vector<double> &fields() const noexcept { return fields_; }
    const std::vector<Coupling> &couplings() const noexcept { return couplings_; }
    double offset() const noexcept { return offset_; }

    friend bool operator==(const IsingModel &, const IsingModel &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<double> fields_;
    std::vector<Coupling> couplings_;
    double offset_ = 0.0;
};

inline double spin(std::uint8_t bit) noexcept { return bit != 0 ? -1.0 : 1.0; }

inline double energy(const IsingModel &model, const BitString &x) {
    detail::require(x.size() == model.n(), "energy: bit string length does not match model size");
    double e = model.offset();
    const auto &h = model.fields();
    for (std::size_t i = 0; i < model.n(); ++i) {
        e += h[i] * spin(x[i]);
    }
    for (const auto &c : model.couplings()) {
        e += c.value * spin(x[c.i]) * spin(x[c.j]);
    }
    return e;
}

/// H^y = P_y H P_y: h_i -> (-1)^{y_i} h_i, J_ij -> (-1)^{y_i + y_j} J_ij.
inline IsingModel gauge_transform(const IsingModel &model, const GaugeMask &y) {
    detail::require(y.size() == model.n(), "gauge_transform: mask length does not match model size");
    std::vector<double> h = model.fields();
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (y[i] != 0) {
            h[i] = -h[i];
        }
    }
    std::vector<Coupling> couplings = model.couplings();
    for (auto &c : couplings) {
        if ((y[c.i] ^ y[c.j]) != 0) {
            c.value = -c.value;
        }
    }
    return IsingModel(model.n(), std::move(h), std::move(couplings), model.offset());
}

/// Largest n accepted by brute_force_best.
inline constexpr std::size_t kBruteForceMaxSpins = 24;

/// Exhaustive minimum. Ties go to the lexicographically smallest string.
inline std::pair<BitString, double> brute_force_best(const IsingModel &model) {
    if (model.n() > kBruteForceMaxSpins) {
        throw ResourceError("brute_force_best: n = " + std::to_string(model.n()) + " exceeds the limit of " +
                            std::to_string(kBruteForceMaxSpins));
    }
    const std::size_t n = model.n();
    const std::uint64_t count = std::uint64_t{1} << n;
    BitString best = BitString::zeros(n);
    double best_energy = energy(model, best);
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        BitString x = BitString::from_index(idx, n);
        const double e = energy(model, x);
        if (e < best_energy || (e == best_energy && x < best)) {
            best = std::move(x);
            best_energy = e;
        }
    }
    return {best, best_energy};
}

/**
 * Dense precomputation for evaluating many strings against one model.
 *
 * With F the set of 1-bits, flipping spins in F from the all-zeros
 * reference changes exactly the terms with one endpoint in F:
 *
 *     E(x) = E(0) - 2 sum_{i in F} (h_i + R_i) + 4 sum_{i<j in F} J_ij
 *
 * where R_i is the row sum of couplings at i. Cost is O(|F|^2), which is
 * what makes sampling near the all-zeros attractor cheap at n in the
 * hundreds.
 */
class EnergyEvaluator {
  public:
    explicit EnergyEvaluator(const IsingModel &model)
        : n_(model.n()), dense_(model.n() * model.n(), 0.0), linear_(model.n(), 0.0) {
        double e0 = model.offset();
        for (std::size_t i = 0; i < n_; ++i) {
            linear_[i] = model.fields()[i];
            e0 += model.fields()[i];
        }
        for (const auto &c : model.couplings()) {
            dense_[c.i * n_ + c.j] = c.value;
            dense_[c.j * n_ + c.i] = c.value;
            linear_[c.i] += c.value;
            linear_[c.j] += c.value;
            e0 += c.value;
        }
        zero_energy_ = e0;
    }

    std::size_t n() const noexcept { return n_; }
    double zero_energy() const noexcept { return zero_energy_; }

    double energy_of_support(std::span<const std::uint32_t> ones) const {
        double linear = 0.0;
        double pair = 0.0;
        for (std::size_t a = 0; a < ones.size(); ++a) {
            const std::size_t i = ones[a];
            linear += linear_[i];
            const double *row = dense_.data() + i * n_;
            for (std::size_t b = a + 1; b < ones.size(); ++b) {
                pair += row[ones[b]];
            }
        }
        return zero_energy_ - 2.0 * linear + 4.0 * pair;
    }

    double operator()(const BitString &x) const {
        detail::require(x.size() == n_, "EnergyEvaluator: bit string length does not match model size");
        const auto ones = x.support();
        return energy_of_support(ones);
    }

  private:
    std::size_t n_;
    std::vector<double> dense_;
    std::vector<double> linear_;
    double zero_energy_ = 0.0;
};

} // namespace ndar
