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
 * MaxCut instances, their Ising encoding, random instance families and the
 * plain-text edge-list format.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ndar/bitstring.hpp"
#include "ndar/errors.hpp"
#include "ndar/ising.hpp"
#include "ndar/rng.hpp"

namespace ndar {

struct Edge {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double weight = 1.0;

    friend bool operator==(const Edge &, const Edge &) = default;
};

class MaxCutInstance {
  public:
    MaxCutInstance() = default;

    MaxCutInstance(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto &e : edges_) {
            detail::require(e.i != e.j, "MaxCutInstance: self-loop on node " + std::to_string(e.i));
            detail::require(e.i < e.j, "MaxCutInstance: edges need i < j");
            detail::require(e.j < n_, "MaxCutInstance: edge index out of range");
            detail::require(std::isfinite(e.weight), "MaxCutInstance: weights must be finite");
            detail::require(seen.emplace(e.i, e.j).second,
                            "MaxCutInstance: duplicate edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")");
        }
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }

    friend bool operator==(const MaxCutInstance &, const MaxCutInstance &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

inline double cut_value(const MaxCutInstance &g, const BitString &x) {
    detail::require(x.size() == g.n(), "cut_value: bit string length does not match node count");
    double cut = 0.0;
    for (const auto &e : g.edges()) {
        if (x[e.i] != x[e.j]) {
            cut += e.weight;
        }
    }
    return cut;
}

/// |E| / C(n, 2).
inline double edge_density(const MaxCutInstance &g) {
    detail::require(g.n() >= 2, "edge_density: need at least two nodes");
    const double pairs = static_cast<double>(g.n()) * static_cast<double>(g.n() - 1) / 2.0;
    return static_cast<double>(g.edges().size()) / pairs;
}

/// J_ij = w_ij / 2 and offset = -sum(w) / 2, so energy(x) == -cut_value(x).
inline IsingModel maxcut_to_ising(const MaxCutInstance &g) {
    std::vector<Coupling> couplings;
    couplings.reserve(g.edges().size());
    double total = 0.0;
    for (const auto &e : g.edges()) {
        couplings.push_back({e.i, e.j, e.weight / 2.0});
        total += e.weight;
    }
    return IsingModel(g.n(), std::vector<double>(g.n(), 0.0), std::move(couplings), -total / 2.0);
}

/// G(n, p = density) with unit weights.
inline MaxCutInstance gen_unweighted(std::size_t n, double density, std::uint64_t seed) {
    detail::require(n >= 2, "gen_unweighted: need at least two nodes");
    detail::require(density >= 0.0 && density <= 1.0, "gen_unweighted: density must lie in [0, 1]");
    Engine rng(seed);
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (uniform01(rng) < density) {
                edges.push_back({i, j, 1.0});
            }
        }
    }
    return MaxCutInstance(n, std::move(edges));
}

/// Complete graph with weights +1 / -1 at equal probability.
inline MaxCutInstance gen_weighted_dense(std::size_t n, std::uint64_t seed) {
    detail::require(n >= 2, "gen_weighted_dense: need at least two nodes");
    Engine rng(seed);
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            edges.push_back({i, j, (rng() >> 63) != 0 ? 1.0 : -1.0});
        }
    }
    return MaxCutInstance(n, std::move(edges));
}

/// Edge-list text: "n m" then m lines "i j w", sorted by (i, j).
inline void write_instance(std::ostream &out, const MaxCutInstance &g) {
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    out << g.n() << ' ' << edges.size() << '\n';
    char buf[64];
    for (const auto &e : edges) {
        std::snprintf(buf, sizeof buf, "%.17g", e.weight);
        out << e.i << ' ' << e.j << ' ' << buf << '\n';
    }
}

/// Reads the edge-list format. Malformed input, self-loops and duplicate
/// edges raise std::invalid_argument.
inline MaxCutInstance read_instance(std::istream &in) {
    std::string line;
    auto next_line = [&](std::string &dst) {
        while (std::getline(in, dst)) {
            if (dst.find_first_not_of(" \t\r") != std::string::npos) {
                return true;
            }
        }
        return false;
    };
    detail::require(next_line(line), "read_instance: missing header line");
    long long n = -1;
    long long m = -1;
    {
        std::istringstream header(line);
        detail::require(static_cast<bool>(header >> n >> m) && n >= 0 && m >= 0, "read_instance: header must be 'n m'");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long k = 0; k < m; ++k) {
        detail::require(next_line(line), "read_instance: expected " + std::to_string(m) + " edges, found " + std::to_string(k));
        std::istringstream row(line);
        long long i = -1;
        long long j = -1;
        double w = 0.0;
        detail::require(static_cast<bool>(row >> i >> j >> w), "read_instance: malformed edge line '" + line + "'");
        detail::require(i >= 0 && j >= 0 && i < n && j < n, "read_instance: edge index out of range in '" + line + "'");
        detail::require(i != j, "read_instance: self-loop in '" + line + "'");
        if (i > j) {
            std::swap(i, j);
        }
        edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), w});
    }
    detail::require(!next_line(line), "read_instance: trailing content after " + std::to_string(m) + " edges");
    return MaxCutInstance(static_cast<std::size_t>(n), std::move(edges));
}

} // namespace ndar
