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
 * Experiment configuration.
 *
 * Configs are flat `key = value` text with dotted section names, one entry
 * per line, `#` starting a comment. Every key must be one of the names in
 * kKnownKeys; unknown or repeated keys are rejected.
 *
 *     instance.family  = unweighted-sparse   # or weighted-dense
 *     instance.n       = 80
 *     instance.density = 0.3
 *     instance.seed    = 7
 *     sampler.kind     = classical           # qaoa | random-circuit | classical
 *     sampler.q        = 0.95
 *     ndar.shots       = 1000
 *     ndar.max_iters   = 12
 *     runs             = 10
 */

#pragma once

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ndar/anneal.hpp"
#include "ndar/errors.hpp"
#include "ndar/maxcut.hpp"
#include "ndar/ndar.hpp"
#include "ndar/qaoa.hpp"

namespace ndar::harness {

inline constexpr std::string_view kKnownKeys[] = {
    "instance.path",       "instance.family",       "instance.n",         "instance.density",
    "instance.seed",       "sampler.kind",          "sampler.q",          "sampler.depth",
    "sampler.fresh_circuit", "sampler.gammas",      "sampler.betas",      "sampler.params",
    "damping.t_delay_us",  "damping.t1_us",         "params.gamma_min",   "params.gamma_max",
    "params.beta_min",     "params.beta_max",       "params.steps",       "ndar.shots",
    "ndar.max_iters",      "ndar.seed",             "ndar.record_distributions", "ndar.patience",
    "ndar.qubit_cap",      "sa.num_reads",          "sa.sweeps",          "sa.beta_min",
    "sa.beta_max",         "sa.seed",               "runs",               "output_dir",
};

class KeyValues {
  public:
    static KeyValues parse(std::istream &in) {
        KeyValues kv;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            const auto text = trim(line);
            if (text.empty()) {
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
            }
            const std::string key(trim(text.substr(0, eq)));
            const std::string value(trim(text.substr(eq + 1)));
            if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
                throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            }
            if (!kv.values_.emplace(key, value).second) {
                throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
            }
        }
        return kv;
    }

    static KeyValues parse(std::string_view text) {
        std::istringstream in{std::string(text)};
        return parse(in);
    }

    bool has(const std::string &key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string &key, const std::string &fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::optional<std::string> get_optional(const std::string &key) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::uint64_t get_u64(const std::string &key, std::uint64_t fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_u64(key, it->second);
    }

    double get_double(const std::string &key, double fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_double(key, it->second);
    }

    bool get_bool(const std::string &key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return fallback;
        }
        if (it->second == "true" || it->second == "1" || it->second == "yes") {
            return true;
        }
        if (it->second == "false" || it->second == "0" || it->second == "no") {
            return false;
        }
        throw ConfigError("config key '" + key + "': expected a boolean, got '" + it->second + "'");
    }

    std::vector<double> get_list(const std::string &key) const {
        std::vector<double> out;
        auto it = values_.find(key);
        if (it == values_.end()) {
            return out;
        }
        std::string_view rest = it->second;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            out.push_back(parse_double(key, std::string(trim(rest.substr(0, comma)))));
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        return out;
    }

    static std::uint64_t parse_u64(const std::string &key, const std::string &text) {
        std::uint64_t v = 0;
        const auto *end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || ptr != end) {
            throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + text + "'");
        }
        return v;
    }

    static double parse_double(const std::string &key, const std::string &text) {
        errno = 0;
        char *end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
            throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
        }
        return v;
    }

  private:
    static std::string_view trim(std::string_view s) {
        const auto first = s.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos) {
            return {};
        }
        const auto last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

    std::map<std::string, std::string> values_;
};

enum class Family { UnweightedSparse, WeightedDense };

inline std::string_view family_name(Family f) {
    return f == Family::UnweightedSparse ? "unweighted-sparse" : "weighted-dense";
}

inline Family parse_family(const std::string &text) {
    if (text == "unweighted-sparse") {
        return Family::UnweightedSparse;
    }
    if (text == "weighted-dense") {
        return Family::WeightedDense;
    }
    throw ConfigError("instance.family: expected 'unweighted-sparse' or 'weighted-dense', got '" + text + "'");
}

struct InstanceSpec {
    std::optional<std::filesystem::path> path;
    Family family = Family::UnweightedSparse;
    std::size_t n = 80;
    double density = 0.3;
    std::uint64_t seed = 0;

    MaxCutInstance load() const {
        if (path) {
            std::ifstream in(*path);
            if (!in) {
                throw ConfigError("instance.path: cannot open '" + path->string() + "'");
            }
            return read_instance(in);
        }
        if (family == Family::UnweightedSparse) {
            return gen_unweighted(n, density, seed);
        }
        return gen_weighted_dense(n, seed);
    }
};

/// Where the QAOA angles come from when sampler.kind = qaoa.
enum class ParamSource { Explicit, GridSearch };

struct ExperimentConfig {
    InstanceSpec instance;
    SamplerSpec sampler{BernoulliSampler{}};
    ParamSource param_source = ParamSource::Explicit;
    ParamGrid grid{};
    NdarConfig ndar{};
    SaConfig sa{};
    std::size_t runs = 10;
    std::filesystem::path output_dir = "out";

    /// Reads a config. A relative instance.path resolves against `base_dir`;
    /// output_dir is taken as written.
    static ExperimentConfig from_key_values(const KeyValues &kv, const std::filesystem::path &base_dir = {}) {
        ExperimentConfig cfg;
        if (auto p = kv.get_optional("instance.path")) {
            std::filesystem::path path(*p);
            cfg.instance.path = path.is_relative() ? base_dir / path : path;
        }
        cfg.instance.family = parse_family(kv.get_string("instance.family", "unweighted-sparse"));
        cfg.instance.n = kv.get_u64("instance.n", 80);
        cfg.instance.density = kv.get_double("instance.density", 0.3);
        cfg.instance.seed = kv.get_u64("instance.seed", 0);
        if (!cfg.instance.path) {
            if (cfg.instance.n < 2) {
                throw ConfigError("instance.n must be at least 2");
            }
            if (!(cfg.instance.density >= 0.0 && cfg.instance.density <= 1.0)) {
                throw ConfigError("instance.density must lie in [0, 1]");
            }
        }

        cfg.sampler.damping.t_delay_us = kv.get_double("damping.t_delay_us", 0.0);
        cfg.sampler.damping.t1_us = kv.get_double("damping.t1_us", 180.0);
        if (!(cfg.sampler.damping.t1_us > 0.0) || !(cfg.sampler.damping.t_delay_us >= 0.0)) {
            throw ConfigError("damping: need t1_us > 0 and t_delay_us >= 0");
        }

        cfg.grid.gamma_min = kv.get_double("params.gamma_min", cfg.grid.gamma_min);
        cfg.grid.gamma_max = kv.get_double("params.gamma_max", cfg.grid.gamma_max);
        cfg.grid.beta_min = kv.get_double("params.beta_min", cfg.grid.beta_min);
        cfg.grid.beta_max = kv.get_double("params.beta_max", cfg.grid.beta_max);
        cfg.grid.steps = kv.get_u64("params.steps", cfg.grid.steps);
        if (cfg.grid.steps == 0) {
            throw ConfigError("params.steps must be at least 1");
        }

        const std::string kind = kv.get_string("sampler.kind", "classical");
        if (kind == "classical") {
            const double q = kv.get_double("sampler.q", 0.95);
            if (!(q >= 0.0 && q <= 1.0)) {
                throw ConfigError("sampler.q must lie in [0, 1]");
            }
            cfg.sampler.kind = BernoulliSampler{q};
        } else if (kind == "random-circuit") {
            const auto depth = kv.get_u64("sampler.depth", 2);
            if (depth == 0) {
                throw ConfigError("sampler.depth must be at least 1");
            }
            cfg.sampler.kind = RandomCircuitSampler{depth, kv.get_bool("sampler.fresh_circuit", false)};
        } else if (kind == "qaoa") {
            const std::string source = kv.get_string("sampler.params", "explicit");
            if (source == "grid") {
                cfg.param_source = ParamSource::GridSearch;
                cfg.sampler.kind = QaoaSampler{QaoaParams({0.0}, {0.0})};
            } else if (source == "explicit") {
                auto gammas = kv.get_list("sampler.gammas");
                auto betas = kv.get_list("sampler.betas");
                if (gammas.empty() || gammas.size() != betas.size()) {
                    throw ConfigError("sampler.gammas / sampler.betas: need equal-length, non-empty lists");
                }
                cfg.sampler.kind = QaoaSampler{QaoaParams(std::move(gammas), std::move(betas))};
            } else {
                throw ConfigError("sampler.params: expected 'explicit' or 'grid', got '" + source + "'");
            }
        } else {
            throw ConfigError("sampler.kind: expected 'qaoa', 'random-circuit' or 'classical', got '" + kind + "'");
        }

        cfg.ndar.shots = kv.get_u64("ndar.shots", 1000);
        cfg.ndar.max_iters = kv.get_u64("ndar.max_iters", 10);
        cfg.ndar.master_seed = kv.get_u64("ndar.seed", 0);
        cfg.ndar.record_distributions = kv.get_bool("ndar.record_distributions", false);
        cfg.ndar.patience = kv.get_u64("ndar.patience", 0);
        cfg.ndar.qubit_cap = kv.get_u64("ndar.qubit_cap", kDefaultQubitCap);
        if (cfg.ndar.shots == 0 || cfg.ndar.max_iters == 0) {
            throw ConfigError("ndar.shots and ndar.max_iters must be at least 1");
        }

        cfg.sa.num_reads = kv.get_u64("sa.num_reads", 100);
        cfg.sa.sweeps_per_read = kv.get_u64("sa.sweeps", 1000);
        cfg.sa.beta_min = kv.get_double("sa.beta_min", 0.01);
        cfg.sa.beta_max = kv.get_double("sa.beta_max", 10.0);
        cfg.sa.seed = kv.get_u64("sa.seed", 0);
        try {
            cfg.sa.validate();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }

        cfg.runs = kv.get_u64("runs", 10);
        if (cfg.runs == 0) {
            throw ConfigError("runs must be at least 1");
        }
        cfg.output_dir = kv.get_string("output_dir", "out");
        return cfg;
    }

    static ExperimentConfig load(const std::filesystem::path &file) {
        std::ifstream in(file);
        if (!in) {
            throw ConfigError("cannot open config '" + file.string() + "'");
        }
        return from_key_values(KeyValues::parse(in), file.parent_path());
    }
};

} // namespace ndar::harness
