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

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "ndar/harness/config.hpp"
#include "ndar/harness/csv.hpp"
#include "ndar/harness/experiment.hpp"
#include "ndar/harness/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

constexpr const char *kFooter = R"(Exit codes: 0 success, 1 other failure, 2 config error, 3 resource cap exceeded.
NDAR_THREADS, when set to a positive integer, overrides --threads.

CSV files written by `run` (UTF-8, header row, 12 significant digits):
  summary.csv       n,edges,edge_density,e_sa,sa_energy,brute_force_cut,runs,iterations,sampler,q,
                    damping_gamma,qaoa_gamma,qaoa_beta,final_mean_cut,final_sem_cut,final_mean_ratio,
                    final_sem_ratio,final_mean_cumulative_ratio
  trajectory.csv    iter,mean_best_cut,sem_best_cut,mean_ratio,sem_ratio,mean_cumulative_ratio
  runs/run_NNN.csv  iter,best_energy,best_cut,cumulative_best_cut,ratio,attractor_energy,
                    attractor_hamming_weight,best_bits_original_frame
  cost_dist.csv     run,iter,energy,cut,count                               (ndar.record_distributions)
  hamming_dist.csv  run,iter,hamming_weight,count,attractor_hamming_weight  (ndar.record_distributions)
`params-search` prints gamma,beta,expectation.)";

using ndar::harness::ExperimentConfig;

ExperimentConfig load_config(const std::string &path) { return ExperimentConfig::load(path); }

void write_or_print(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write '" + out + "'");
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise-directed adaptive remapping for Ising and MaxCut problems", "ndar"};
    app.footer(kFooter);
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
    bool svg = false;

    // gen-instance
    auto *gen = app.add_subcommand("gen-instance", "Generate a MaxCut instance in edge-list form");
    std::string family = "unweighted-sparse";
    std::size_t gen_n = 80;
    double density = 0.3;
    gen->add_option("--config", config_path, "Take the instance section from a config file");
    gen->add_option("--family", family, "unweighted-sparse | weighted-dense");
    gen->add_option("--n", gen_n, "Number of nodes");
    gen->add_option("--density", density, "Edge probability (unweighted-sparse)");
    gen->add_option("--seed", seed, "Instance seed");
    gen->add_option("--out", out, "Output file (default: stdout)");

    // run
    auto *run = app.add_subcommand("run", "Run an experiment and write CSVs");
    run->add_option("--config", config_path, "Experiment config")->required();
    run->add_option("--seed", seed, "Override ndar.seed");
    run->add_option("--out", out, "Override output_dir");
    run->add_option("--threads", threads, "Worker threads");

    // sa-baseline
    auto *sa = app.add_subcommand("sa-baseline", "Solve the configured instance with simulated annealing");
    sa->add_option("--config", config_path, "Experiment config")->required();
    sa->add_option("--seed", seed, "Override sa.seed");
    sa->add_option("--out", out, "Write the result CSV here (default: stdout)");
    sa->add_option("--threads", threads, "Worker threads");

    // params-search
    auto *ps = app.add_subcommand("params-search", "Grid-search p=1 QAOA angles on the configured instance");
    ps->add_option("--config", config_path, "Experiment config")->required();
    ps->add_option("--out", out, "Write the landscape CSV here (default: stdout)");

    // report
    auto *rep = app.add_subcommand("report", "Summarize a run directory");
    std::string run_dir;
    rep->add_option("dir", run_dir, "Run directory");
    rep->add_option("--out", out, "Run directory (alternative to the positional argument)");
    rep->add_flag("--svg", svg, "Also write SVG charts into the directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*gen) {
            ndar::harness::InstanceSpec spec;
            if (!config_path.empty()) {
                spec = load_config(config_path).instance;
            } else {
                if (gen_n < 2) {
                    throw ndar::ConfigError("--n must be at least 2");
                }
                if (!(density >= 0.0 && density <= 1.0)) {
                    throw ndar::ConfigError("--density must lie in [0, 1]");
                }
                spec.family = ndar::harness::parse_family(family);
                spec.n = gen_n;
                spec.density = density;
            }
            if (seed) {
                spec.seed = *seed;
            }
            std::ostringstream text;
            ndar::write_instance(text, spec.load());
            write_or_print(text.str(), out);
        } else if (*run) {
            auto cfg = load_config(config_path);
            if (seed) {
                cfg.ndar.master_seed = *seed;
            }
            if (!out.empty()) {
                cfg.output_dir = out;
            }
            const auto result = ndar::harness::run_experiment(cfg, ndar::harness::resolve_threads(threads));
            const auto &last = result.trajectory.back();
            std::cout << "wrote " << cfg.output_dir.string() << ": " << result.runs.size() << " runs, "
                      << result.trajectory.size() << " iterations, final E_Best/E_SA "
                      << ndar::harness::format_number(last.mean_ratio) << " +/- "
                      << ndar::harness::format_number(last.sem_ratio) << '\n';
        } else if (*sa) {
            auto cfg = load_config(config_path);
            if (seed) {
                cfg.sa.seed = *seed;
            }
            cfg.sa.threads = ndar::harness::resolve_threads(threads);
            const auto model = ndar::maxcut_to_ising(cfg.instance.load());
            const auto result = ndar::sa_solve(model, cfg.sa);
            ndar::harness::CsvWriter csv({"energy", "cut", "bits"});
            csv.row({ndar::harness::format_number(result.energy), ndar::harness::format_number(-result.energy),
                     result.bits.to_string()});
            write_or_print(csv.str(), out);
        } else if (*ps) {
            const auto cfg = load_config(config_path);
            const auto result = ndar::harness::params_search(cfg);
            write_or_print(ndar::harness::landscape_csv(result), out);
            (out.empty() ? std::cerr : std::cout)
                << "best gamma=" << ndar::harness::format_number(result.best.gammas.front())
                << " beta=" << ndar::harness::format_number(result.best.betas.front())
                << " expectation=" << ndar::harness::format_number(result.best_value) << '\n';
        } else if (*rep) {
            const std::string dir = run_dir.empty() ? out : run_dir;
            if (dir.empty()) {
                throw ndar::ConfigError("report: give a run directory");
            }
            std::cout << ndar::harness::report(dir, svg);
        }
    } catch (const ndar::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ndar::ResourceError &e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
