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
 * Multi-run experiments: one shared instance, one SA baseline, `runs`
 * independently seeded remapping runs, and the files that summarize them.
 *
 * Files written to the output directory:
 *
 *   instance.txt      the instance in edge-list form
 *   summary.csv       one row: instance stats, E_SA, final means
 *   trajectory.csv    iter,mean_best_cut,sem_best_cut,mean_ratio,sem_ratio,mean_cumulative_ratio
 *   runs/run_NNN.csv  iter,best_energy,best_cut,cumulative_best_cut,ratio,attractor_energy,
 *                     attractor_hamming_weight,best_bits_original_frame
 *   cost_dist.csv     run,iter,energy,cut,count          (record_distributions only)
 *   hamming_dist.csv  run,iter,hamming_weight,count,attractor_hamming_weight
 *
 * Distributions are written for the first and last iteration of every run.
 * Ratios divide a cut by E_SA. A run stopped early by the patience rule
 * contributes its last record to later iterations.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "ndar/anneal.hpp"
#include "ndar/harness/config.hpp"
#include "ndar/harness/csv.hpp"
#include "ndar/ising.hpp"
#include "ndar/maxcut.hpp"
#include "ndar/ndar.hpp"
#include "ndar/qaoa.hpp"

namespace ndar::harness {

/// --threads value unless NDAR_THREADS is set to a positive integer.
inline std::size_t resolve_threads(std::size_t flag_value) {
    if (const char *env = std::getenv("NDAR_THREADS"); env != nullptr && *env != '\0') {
        const auto v = KeyValues::parse_u64("NDAR_THREADS", env);
        if (v > 0) {
            return v;
        }
    }
    return flag_value == 0 ? 1 : flag_value;
}

struct AggregateRow {
    std::size_t iter_index = 0;
    double mean_best_cut = 0.0;
    double sem_best_cut = 0.0;
    double mean_ratio = 0.0;
    double sem_ratio = 0.0;
    double mean_cumulative_ratio = 0.0;
};

struct ExperimentOutcome {
    MaxCutInstance instance;
    IsingModel model;
    SaResult sa;
    /// Best SA cut, the ratio denominator.
    double e_sa = 0.0;
    std::optional<double> brute_force_cut;
    std::optional<QaoaParams> qaoa_params;
    std::vector<NdarResult> runs;
    std::vector<AggregateRow> trajectory;
};

/// Runs `count` jobs on up to `threads` workers; job k writes slot k only.
template <typename Job> void parallel_for(std::size_t count, std::size_t threads, Job job) {
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
    if (workers == 1) {
        for (std::size_t k = 0; k < count; ++k) {
            job(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = next++; k < count; k = next++) {
                    job(k);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

inline std::vector<AggregateRow> aggregate(const std::vector<NdarResult> &runs, double e_sa) {
    std::size_t length = 0;
    for (const auto &r : runs) {
        length = std::max(length, r.trace.size());
    }
    std::vector<AggregateRow> rows;
    for (std::size_t j = 0; j < length; ++j) {
        std::vector<double> cuts;
        std::vector<double> ratios;
        std::vector<double> cumulative;
        for (const auto &r : runs) {
            const auto &rec = r.trace[std::min(j, r.trace.size() - 1)];
            cuts.push_back(rec.best_cut);
            ratios.push_back(rec.best_cut / e_sa);
            cumulative.push_back(-rec.cumulative_best_energy / e_sa);
        }
        rows.push_back({j + 1, mean(cuts), sem(cuts), mean(ratios), sem(ratios), mean(cumulative)});
    }
    return rows;
}

inline ExperimentOutcome compute_experiment(const ExperimentConfig &cfg, std::size_t threads) {
    ExperimentOutcome out;
    out.instance = cfg.instance.load();
    out.model = maxcut_to_ising(out.instance);

    SaConfig sa = cfg.sa;
    sa.threads = threads;
    out.sa = sa_solve(out.model, sa);
    out.e_sa = -out.sa.energy;
    if (out.model.n() <= kBruteForceMaxSpins) {
        out.brute_force_cut = -brute_force_best(out.model).second;
    }

    SamplerSpec sampler = cfg.sampler;
    if (auto *qa = std::get_if<QaoaSampler>(&sampler.kind)) {
        if (cfg.param_source == ParamSource::GridSearch) {
            qa->params = optimize_params(out.model, cfg.grid, cfg.ndar.qubit_cap);
        }
        out.qaoa_params = qa->params;
    }

    out.runs.resize(cfg.runs);
    parallel_for(cfg.runs, threads, [&](std::size_t r) {
        NdarConfig nc = cfg.ndar;
        nc.run_index = r;
        out.runs[r] = run_ndar(out.model, sampler, nc);
    });
    out.trajectory = aggregate(out.runs, out.e_sa);
    return out;
}

inline std::string sampler_label(const SamplerSpec &s) {
    if (std::holds_alternative<QaoaSampler>(s.kind)) {
        return "qaoa";
    }
    if (std::holds_alternative<RandomCircuitSampler>(s.kind)) {
        return "random-circuit";
    }
    if (std::holds_alternative<BernoulliSampler>(s.kind)) {
        return "classical";
    }
    return "custom";
}

inline void write_outputs(const ExperimentOutcome &out, const ExperimentConfig &cfg, const std::filesystem::path &dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "runs");
    {
        std::ofstream f(dir / "instance.txt", std::ios::binary | std::ios::trunc);
        write_instance(f, out.instance);
    }

    const auto &last = out.trajectory.back();
    const auto *bern = std::get_if<BernoulliSampler>(&cfg.sampler.kind);
    CsvWriter summary({"n", "edges", "edge_density", "e_sa", "sa_energy", "brute_force_cut", "runs", "iterations", "sampler",
                       "q", "damping_gamma", "qaoa_gamma", "qaoa_beta", "final_mean_cut", "final_sem_cut",
                       "final_mean_ratio", "final_sem_ratio", "final_mean_cumulative_ratio"});
    summary.row({format_number(out.instance.n()), format_number(out.instance.edges().size()),
                 out.instance.n() >= 2 ? format_number(edge_density(out.instance)) : "", format_number(out.e_sa),
                 format_number(out.sa.energy), out.brute_force_cut ? format_number(*out.brute_force_cut) : "",
                 format_number(out.runs.size()), format_number(out.trajectory.size()), sampler_label(cfg.sampler),
                 bern != nullptr ? format_number(bern->q) : "",
                 bern != nullptr ? "" : format_number(cfg.sampler.damping.gamma()),
                 out.qaoa_params ? format_number(out.qaoa_params->gammas.front()) : "",
                 out.qaoa_params ? format_number(out.qaoa_params->betas.front()) : "", format_number(last.mean_best_cut),
                 format_number(last.sem_best_cut), format_number(last.mean_ratio), format_number(last.sem_ratio),
                 format_number(last.mean_cumulative_ratio)});
    summary.save(dir / "summary.csv");

    CsvWriter trajectory({"iter", "mean_best_cut", "sem_best_cut", "mean_ratio", "sem_ratio", "mean_cumulative_ratio"});
    for (const auto &row : out.trajectory) {
        trajectory.row({format_number(row.iter_index), format_number(row.mean_best_cut), format_number(row.sem_best_cut),
                        format_number(row.mean_ratio), format_number(row.sem_ratio), format_number(row.mean_cumulative_ratio)});
    }
    trajectory.save(dir / "trajectory.csv");

    CsvWriter costs({"run", "iter", "energy", "cut", "count"});
    CsvWriter weights({"run", "iter", "hamming_weight", "count", "attractor_hamming_weight"});
    bool any_distribution = false;
    for (std::size_t r = 0; r < out.runs.size(); ++r) {
        const auto &trace = out.runs[r].trace;
        CsvWriter run_csv({"iter", "best_energy", "best_cut", "cumulative_best_cut", "ratio", "attractor_energy",
                           "attractor_hamming_weight", "best_bits_original_frame"});
        for (const auto &rec : trace) {
            run_csv.row({format_number(rec.iter_index), format_number(rec.best_energy), format_number(rec.best_cut),
                         format_number(-rec.cumulative_best_energy), format_number(rec.best_cut / out.e_sa),
                         format_number(rec.attractor_energy), format_number(rec.attractor_hamming_weight),
                         rec.cumulative_mask.bits().to_string()});
        }
        char name[32];
        std::snprintf(name, sizeof name, "run_%03zu.csv", r);
        run_csv.save(dir / "runs" / name);

        std::vector<std::size_t> picks{0};
        if (trace.size() > 1) {
            picks.push_back(trace.size() - 1);
        }
        for (auto j : picks) {
            const auto &rec = trace[j];
            if (rec.energy_histogram) {
                any_distribution = true;
                for (const auto &[e, count] : *rec.energy_histogram) {
                    costs.row({format_number(r), format_number(rec.iter_index), format_number(e), format_number(-e),
                               format_number(count)});
                }
            }
            if (rec.hamming_histogram) {
                for (std::size_t w = 0; w < rec.hamming_histogram->size(); ++w) {
                    if ((*rec.hamming_histogram)[w] != 0) {
                        weights.row({format_number(r), format_number(rec.iter_index), format_number(w),
                                     format_number((*rec.hamming_histogram)[w]), format_number(rec.attractor_hamming_weight)});
                    }
                }
            }
        }
    }
    if (any_distribution) {
        costs.save(dir / "cost_dist.csv");
        weights.save(dir / "hamming_dist.csv");
    }
}

/// compute_experiment + write_outputs into cfg.output_dir.
inline ExperimentOutcome run_experiment(const ExperimentConfig &cfg, std::size_t threads = 1) {
    auto out = compute_experiment(cfg, threads);
    write_outputs(out, cfg, cfg.output_dir);
    return out;
}

/// Grid landscape as CSV: gamma,beta,expectation (steps^2 rows).
inline std::string landscape_csv(const ParamSearchResult &result) {
    CsvWriter csv({"gamma", "beta", "expectation"});
    for (const auto &p : result.landscape) {
        csv.row({format_number(p.gamma), format_number(p.beta), format_number(p.value)});
    }
    return csv.str();
}

inline ParamSearchResult params_search(const ExperimentConfig &cfg) {
    const auto model = maxcut_to_ising(cfg.instance.load());
    return search_params(model, cfg.grid, cfg.ndar.qubit_cap);
}

} // namespace ndar::harness
