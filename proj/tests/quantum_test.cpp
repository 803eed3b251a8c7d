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

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ndar/circuit.hpp"
#include "ndar/damping.hpp"
#include "ndar/errors.hpp"
#include "ndar/maxcut.hpp"
#include "ndar/qaoa.hpp"
#include "ndar/statevector.hpp"
#include "test_support.hpp"

namespace ndar {
namespace {

using C = std::complex<double>;
using Matrix = std::vector<std::vector<C>>;

// ---- Reference simulator: full 2^n x 2^n operators via Kronecker products --

Matrix identity(std::size_t d) {
    Matrix m(d, std::vector<C>(d, 0.0));
    for (std::size_t k = 0; k < d; ++k) {
        m[k][k] = 1.0;
    }
    return m;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    const std::size_t ra = a.size(), rb = b.size();
    Matrix m(ra * rb, std::vector<C>(ra * rb, 0.0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < rb; ++l)
                    m[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return m;
}

Matrix add(const Matrix &a, const Matrix &b, C scale_b = 1.0) {
    Matrix m = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            m[i][j] += scale_b * b[i][j];
    return m;
}

// Basis index bit q is qubit q, so qubit n-1 is the leftmost factor.
Matrix embed(std::size_t n, const std::map<std::size_t, Matrix> &factors) {
    Matrix m = {{1.0}};
    for (std::size_t q = n; q-- > 0;) {
        auto it = factors.find(q);
        m = kron(m, it == factors.end() ? identity(2) : it->second);
    }
    return m;
}

Matrix gate_2x2(GateKind k, double t) {
    const C i(0.0, 1.0);
    const double r = std::sqrt(0.5), c = std::cos(t / 2), s = std::sin(t / 2);
    switch (k) {
    case GateKind::H: return {{r, r}, {r, -r}};
    case GateKind::X: return {{0.0, 1.0}, {1.0, 0.0}};
    case GateKind::Y: return {{0.0, -i}, {i, 0.0}};
    case GateKind::Z: return {{1.0, 0.0}, {0.0, -1.0}};
    case GateKind::S: return {{1.0, 0.0}, {0.0, i}};
    case GateKind::T: return {{1.0, 0.0}, {0.0, std::exp(i * (std::numbers::pi / 4))}};
    case GateKind::RX: return {{c, -i * s}, {-i * s, c}};
    case GateKind::RY: return {{c, -s}, {s, c}};
    case GateKind::RZ: return {{std::exp(-i * (t / 2)), 0.0}, {0.0, std::exp(i * (t / 2))}};
    default: throw std::logic_error("not single-qubit");
    }
}

Matrix full_operator(std::size_t n, const Gate &g) {
    const Matrix p0 = {{1.0, 0.0}, {0.0, 0.0}}, p1 = {{0.0, 0.0}, {0.0, 1.0}};
    const Matrix x = gate_2x2(GateKind::X, 0), z = gate_2x2(GateKind::Z, 0);
    const std::size_t a = g.targets[0], b = g.targets[1];
    switch (g.kind) {
    case GateKind::CX: return add(embed(n, {{a, p0}}), embed(n, {{a, p1}, {b, x}}));
    case GateKind::CZ: return add(embed(n, {{a, p0}}), embed(n, {{a, p1}, {b, z}}));
    case GateKind::RZZ: {
        const C i(0.0, 1.0);
        Matrix m = embed(n, {});
        for (auto &row : m)
            for (auto &v : row) v *= std::cos(g.theta / 2);
        return add(m, embed(n, {{a, z}, {b, z}}), -i * std::sin(g.theta / 2));
    }
    default: return embed(n, {{a, gate_2x2(g.kind, g.theta)}});
    }
}

std::vector<C> reference_state(const Circuit &circuit) {
    const std::size_t d = std::size_t{1} << circuit.n();
    std::vector<C> psi(d, 0.0);
    psi[0] = 1.0;
    for (const auto &g : circuit.gates()) {
        const Matrix u = full_operator(circuit.n(), g);
        std::vector<C> next(d, 0.0);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) next[r] += u[r][c] * psi[c];
        psi = next;
    }
    return psi;
}

// |<a|b>| == 1 within tol: equal up to global phase.
void expect_same_state(const std::vector<C> &a, const StateVector &b, double tol) {
    ASSERT_EQ(a.size(), b.dim());
    C overlap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        overlap += std::conj(a[k]) * b[k];
        EXPECT_NEAR(std::norm(a[k]), std::norm(b[k]), tol);
    }
    EXPECT_NEAR(std::abs(overlap), 1.0, tol);
}

// ---- Circuit ---------------------------------------------------------------

TEST(Circuit, ValidatesGates) {
    Circuit c(2);
    EXPECT_THROW(c.add(Gate::one(GateKind::H, 2)), std::invalid_argument);
    EXPECT_THROW(c.add(Gate::two(GateKind::CX, 1, 1)), std::invalid_argument);
    EXPECT_THROW(c.add(Gate::two(GateKind::CZ, 0, 5)), std::invalid_argument);
    EXPECT_THROW(c.add(Gate::one(GateKind::RX, 0, NAN)), std::invalid_argument);
    EXPECT_NO_THROW(c.add(Gate::two(GateKind::CX, 1, 0)));
}

TEST(QaoaCircuit, SingleCouplingGateSequence) {
    const IsingModel m(2, {0.0, 0.0}, {{0, 1, 1.5}});
    const double g = 0.3, b = 0.7;
    const auto c = build_qaoa_circuit(m, QaoaParams({g}, {b}));
    const std::vector<Gate> expected{Gate::one(GateKind::H, 0), Gate::one(GateKind::H, 1),
                                     Gate::two(GateKind::RZZ, 0, 1, 2 * g * 1.5), Gate::one(GateKind::RX, 0, 2 * b),
                                     Gate::one(GateKind::RX, 1, 2 * b)};
    EXPECT_EQ(c.gates(), expected);
}

TEST(QaoaCircuit, FieldsAddRzAndZeroAnglesGiveUniformSampling) {
    const IsingModel m(3, {1.0, 0.0, -1.0}, {{0, 2, 1.0}});
    const auto c = build_qaoa_circuit(m, QaoaParams({0.1}, {0.2}));
    std::size_t rz = 0;
    for (const auto &g : c.gates()) {
        rz += g.kind == GateKind::RZ;
    }
    EXPECT_EQ(rz, 2u);

    const auto probs = simulate(build_qaoa_circuit(m, QaoaParams({0.0}, {0.0}))).probabilities();
    for (double p : probs) {
        EXPECT_NEAR(p, 1.0 / 8.0, 1e-14);
    }
}

TEST(QaoaCircuit, AcceptsPublishedAnglesAndEnforcesCap) {
    const auto m = maxcut_to_ising(gen_unweighted(6, 0.5, 1));
    EXPECT_NO_THROW(build_qaoa_circuit(m, QaoaParams({-0.152}, {2.041})));
    EXPECT_THROW(build_qaoa_circuit(m, QaoaParams({0.1}, {0.1}), 5), ResourceError);
    EXPECT_THROW(QaoaParams({0.1, 0.2}, {0.1}), std::invalid_argument);
    EXPECT_THROW(QaoaParams({}, {}), std::invalid_argument);
}

TEST(RandomCircuit, DeterministicBySeed) {
    EXPECT_EQ(build_random_circuit(9, 3, 42), build_random_circuit(9, 3, 42));
    EXPECT_NE(build_random_circuit(9, 3, 42), build_random_circuit(9, 3, 43));
    EXPECT_THROW(build_random_circuit(4, 0, 1), std::invalid_argument);
}

TEST(RandomCircuit, EveryQubitTouchedOncePerLayer) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto c = build_random_circuit(80, 2, seed);
        std::vector<std::set<std::uint32_t>> layers(1);
        for (const auto &g : c.gates()) {
            for (std::size_t t = 0; t < g.arity(); ++t) {
                if (layers.back().size() == 80) {
                    layers.emplace_back();
                }
                EXPECT_TRUE(layers.back().insert(g.targets[t]).second);
            }
        }
        ASSERT_EQ(layers.size(), 2u);
        EXPECT_EQ(layers[0].size(), 80u);
        EXPECT_EQ(layers[1].size(), 80u);
    }
}

TEST(RandomCircuit, DrawsFromFullGateSet) {
    std::set<GateKind> seen;
    const auto circuit = build_random_circuit(40, 20, 5);
    for (const auto &g : circuit.gates()) {
        seen.insert(g.kind);
    }
    EXPECT_EQ(seen.size(), kRandomGateSet.size());
    EXPECT_EQ(seen.count(GateKind::RZZ), 0u);
}

// ---- StateVector -----------------------------------------------------------

TEST(Simulate, TextbookStates) {
    const auto empty = simulate(Circuit(3));
    EXPECT_EQ(empty[0], C(1.0));
    for (std::size_t k = 1; k < 8; ++k) {
        EXPECT_EQ(empty[k], C(0.0));
    }

    Circuit h(1);
    h.add(Gate::one(GateKind::H, 0));
    const auto plus = simulate(h);
    EXPECT_NEAR(plus[0].real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(plus[1].real(), std::sqrt(0.5), 1e-15);

    Circuit bell(2);
    bell.add(Gate::one(GateKind::H, 0)).add(Gate::two(GateKind::CX, 0, 1));
    const auto s = simulate(bell);
    EXPECT_NEAR(std::abs(s[0] - std::sqrt(0.5)), 0.0, 1e-15);
    EXPECT_EQ(s[1], C(0.0));
    EXPECT_EQ(s[2], C(0.0));
    EXPECT_NEAR(std::abs(s[3] - std::sqrt(0.5)), 0.0, 1e-15);
}

TEST(Simulate, LittleEndianQubitOrder) {
    Circuit c(3);
    c.add(Gate::one(GateKind::X, 1));
    const auto s = simulate(c);
    EXPECT_EQ(s[2], C(1.0));
    EXPECT_EQ(sample(s, 1, 0)[0].to_string(), "010");
}

TEST(Simulate, MatchesKroneckerReferenceOnRandomCircuits) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto c = build_random_circuit(4, 4, seed);
        const auto s = simulate(c);
        expect_same_state(reference_state(c), s, 1e-12);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
    }
}

TEST(Simulate, MatchesKroneckerReferenceOnQaoa) {
    Engine rng(8);
    const auto m = test::random_model(4, rng);
    const auto c = build_qaoa_circuit(m, QaoaParams({0.4, -0.3}, {0.9, 0.2}));
    expect_same_state(reference_state(c), simulate(c), 1e-12);
}

TEST(Simulate, EnforcesCap) {
    EXPECT_THROW(simulate(Circuit(23)), ResourceError);
    EXPECT_THROW(simulate(Circuit(5), 4), ResourceError);
}

// ---- Sampling --------------------------------------------------------------

TEST(Sample, BellStateHasOnlyCorrelatedOutcomes) {
    Circuit bell(2);
    bell.add(Gate::one(GateKind::H, 0)).add(Gate::two(GateKind::CX, 0, 1));
    std::size_t zeros = 0;
    for (const auto &x : sample(simulate(bell), 100000, 3)) {
        ASSERT_TRUE(x.to_string() == "00" || x.to_string() == "11");
        zeros += x.to_string() == "00";
    }
    EXPECT_NEAR(zeros, 50000.0, 5 * std::sqrt(100000 * 0.25));
}

TEST(Sample, UniformStateFrequenciesWithinFiveSigma) {
    Circuit c(3);
    for (std::uint32_t q = 0; q < 3; ++q) {
        c.add(Gate::one(GateKind::H, q));
    }
    const std::size_t shots = 100000;
    std::vector<std::size_t> counts(8, 0);
    for (const auto &x : sample(simulate(c), shots, 17)) {
        ++counts[x.to_index()];
    }
    const double p = 1.0 / 8.0, sigma = std::sqrt(shots * p * (1 - p));
    for (auto k : counts) {
        EXPECT_NEAR(static_cast<double>(k), shots * p, 5 * sigma);
    }
}

TEST(Sample, ReproducibleBySeed) {
    const auto s = simulate(build_random_circuit(5, 3, 2));
    EXPECT_EQ(sample(s, 1, 77), sample(s, 1, 77));
    EXPECT_EQ(sample(s, 500, 77), sample(s, 500, 77));
    EXPECT_THROW(sample(s, 0, 1), std::invalid_argument);
}

// ---- Damping ---------------------------------------------------------------

TEST(DampingGamma, Examples) {
    EXPECT_EQ(damping_gamma({0.0, 180.0}), 0.0);
    EXPECT_NEAR(damping_gamma({100.0, 180.0}), 1.0 - std::exp(-5.0 / 9.0), 1e-15);
    EXPECT_NEAR(damping_gamma({100.0, 180.0}), 0.4262, 5e-5);
    EXPECT_NEAR(damping_gamma({50.0, 180.0}), 0.2425, 5e-5);
    EXPECT_NEAR(damping_gamma({1e6, 180.0}), 1.0, 1e-12);
    EXPECT_THROW(damping_gamma({10.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(damping_gamma({-1.0, 180.0}), std::invalid_argument);
}

TEST(ApplyDecay, Extremes) {
    std::vector<BitString> xs;
    Engine rng(1);
    for (int k = 0; k < 50; ++k) {
        xs.push_back(test::random_mask(12, rng).bits());
    }
    EXPECT_EQ(apply_decay(xs, 0.0, 5), xs);
    for (const auto &x : apply_decay(xs, 1.0, 5)) {
        EXPECT_EQ(x, BitString::zeros(12));
    }
    EXPECT_THROW(apply_decay(xs, 1.5, 5), std::invalid_argument);
    EXPECT_THROW(apply_decay(xs, -0.1, 5), std::invalid_argument);
    EXPECT_EQ(apply_decay(xs, 0.4, 9), apply_decay(xs, 0.4, 9));
}

TEST(ApplyDecay, NeverRaisesBitsAndShrinksWeightByOneMinusGamma) {
    const double gamma = 0.3;
    std::vector<BitString> xs(20000, BitString::ones(10));
    double total = 0.0;
    for (const auto &x : apply_decay(xs, gamma, 12)) {
        total += static_cast<double>(hamming_weight(x));
    }
    const double trials = 20000.0 * 10.0;
    EXPECT_NEAR(total, trials * (1 - gamma), 5 * std::sqrt(trials * gamma * (1 - gamma)));

    Engine rng(2);
    std::vector<BitString> mixed;
    for (int k = 0; k < 200; ++k) {
        mixed.push_back(test::random_mask(16, rng).bits());
    }
    const auto decayed = apply_decay(mixed, 0.5, 3);
    for (std::size_t k = 0; k < mixed.size(); ++k) {
        for (std::size_t i = 0; i < 16; ++i) {
            EXPECT_LE(decayed[k][i], mixed[k][i]);
        }
    }
}

TEST(DensityMatrixReference, Examples) {
    const auto c = build_random_circuit(3, 3, 4);
    const auto probs = simulate(c).probabilities();
    const auto undamped = density_matrix_reference(c, 0.0);
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_NEAR(undamped[k], probs[k], 1e-12);
    }
    const auto full = density_matrix_reference(c, 1.0);
    EXPECT_NEAR(full[0], 1.0, 1e-12);

    Circuit one(1);
    one.add(Gate::one(GateKind::X, 0));
    const auto p = density_matrix_reference(one, 0.3);
    EXPECT_NEAR(p[0], 0.3, 1e-15);
    EXPECT_NEAR(p[1], 0.7, 1e-15);

    EXPECT_THROW(density_matrix_reference(Circuit(7), 0.1), ResourceError);
    EXPECT_THROW(density_matrix_reference(one, 2.0), std::invalid_argument);
}

TEST(DecayChannel, AnalyticDistributionMatchesKrausOracle) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 1 + seed % 4;
        const auto c = build_random_circuit(n, 3, seed);
        for (double gamma : {0.0, 0.243, 0.426, 0.9}) {
            const auto kraus = density_matrix_reference(c, gamma);
            const auto bits = decayed_distribution(simulate(c).probabilities(), n, gamma);
            double sum = 0.0;
            for (std::size_t k = 0; k < kraus.size(); ++k) {
                EXPECT_NEAR(bits[k], kraus[k], 1e-10);
                sum += kraus[k];
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(DecayChannel, SampledFrequenciesMatchKrausOracle) {
    const std::size_t shots = 100000;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto c = build_random_circuit(3, 3, seed);
        const double gamma = 0.426;
        const auto kraus = density_matrix_reference(c, gamma);
        const auto decayed = apply_decay(sample(simulate(c), shots, seed), gamma, seed + 100);
        std::vector<double> counts(8, 0.0);
        for (const auto &x : decayed) {
            counts[x.to_index()] += 1.0;
        }
        for (std::size_t k = 0; k < 8; ++k) {
            const double sigma = std::sqrt(shots * kraus[k] * (1 - kraus[k]));
            EXPECT_NEAR(counts[k], shots * kraus[k], 5 * sigma + 1e-9);
        }
    }
}

// ---- QAOA expectation and parameter search ---------------------------------

TEST(QaoaExpectation, ZeroAnglesGiveOffset) {
    Engine rng(3);
    const auto m = test::random_model(5, rng);
    EXPECT_NEAR(qaoa_expectation(m, QaoaParams({0.0}, {0.0})), m.offset(), 1e-12);
}

TEST(QaoaExpectation, SingleSpinClosedForm) {
    const IsingModel m(1, {1.0}, {});
    const C i(0.0, 1.0);
    for (int a = 0; a < 20; ++a) {
        for (int b = 0; b < 20; ++b) {
            const double g = -1.5 + 3.0 * a / 19.0, be = 0.1 + 1.4 * b / 19.0;
            // Independent 2x2 algebra: RX(2b) RZ(2g) H |0>, then <Z>.
            const C a0 = std::sqrt(0.5) * std::exp(-i * g), a1 = std::sqrt(0.5) * std::exp(i * g);
            const C f0 = std::cos(be) * a0 - i * std::sin(be) * a1;
            const C f1 = -i * std::sin(be) * a0 + std::cos(be) * a1;
            const double by_hand = std::norm(f0) - std::norm(f1);
            // Heisenberg picture: e^{i g Z} e^{i b X} Z e^{-i b X} e^{-i g Z} = ... + sin2b sin2g X.
            const double closed = std::sin(2 * be) * std::sin(2 * g);
            EXPECT_NEAR(by_hand, closed, 1e-12);
            EXPECT_NEAR(qaoa_expectation(m, QaoaParams({g}, {be})), closed, 1e-12);
        }
    }
}

TEST(QaoaExpectation, GaugeCovariantDistributions) {
    Engine rng(4);
    for (int t = 0; t < 5; ++t) {
        const std::size_t n = 3 + t;
        const auto m = test::random_model(n, rng);
        const auto y = test::random_mask(n, rng);
        const QaoaParams p({0.37}, {0.61});
        const auto base = simulate(build_qaoa_circuit(m, p)).probabilities();
        const auto moved = simulate(build_qaoa_circuit(gauge_transform(m, y), p)).probabilities();
        double tv = 0.0;
        for (std::size_t k = 0; k < base.size(); ++k) {
            tv += std::abs(moved[k] - base[apply_mask(y, BitString::from_index(k, n)).to_index()]);
        }
        EXPECT_LT(0.5 * tv, 1e-10);
        EXPECT_NEAR(qaoa_expectation(m, p), qaoa_expectation(gauge_transform(m, y), p), 1e-10);
    }
}

TEST(ParamSearch, SingleSpinOptimumAtQuarterPi) {
    // sin2b sin2g over gamma in [-pi/2, pi/2], beta in [0, pi/2] bottoms out at (-pi/4, pi/4).
    const IsingModel m(1, {1.0}, {});
    const auto r = search_params(m, ParamGrid{});
    EXPECT_NEAR(r.best.gammas[0], -std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(r.best.betas[0], std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(r.best_value, -1.0, 1e-12);
    EXPECT_EQ(r.landscape.size(), 41u * 41u);
}

TEST(ParamSearch, ConstantModelPicksFirstGridPoint) {
    const ParamGrid grid{-1.0, 1.0, 0.5, 1.5, 7};
    const auto best = optimize_params(IsingModel::empty(3, 2.5), grid);
    EXPECT_EQ(best.gammas[0], -1.0);
    EXPECT_EQ(best.betas[0], 0.5);
}

TEST(ParamSearch, RefiningTheGridNeverHurts) {
    Engine rng(6);
    const auto m = test::random_model(5, rng);
    const auto coarse = search_params(m, ParamGrid{-1.0, 1.0, 0.0, 1.0, 6});
    const auto fine = search_params(m, ParamGrid{-1.0, 1.0, 0.0, 1.0, 11});
    EXPECT_LE(fine.best_value, coarse.best_value + 1e-12);
    EXPECT_EQ(fine.landscape.size(), 121u);
}

TEST(ParamSearch, Errors) {
    EXPECT_THROW(search_params(IsingModel::empty(2), ParamGrid{0, 1, 0, 1, 0}), std::invalid_argument);
    EXPECT_THROW(search_params(IsingModel::empty(30), ParamGrid{}), ResourceError);
}

} // namespace
} // namespace ndar
