// Copyright 2026 The qlayerwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: qlw <command> [--config FILE] [--set key=value ...]

#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "qlw/cli/commands.hpp"
#include "qlw/cli/config.hpp"
#include "qlw/errors.hpp"

namespace {

struct Common {
    std::string config_path;
    std::vector<std::string> sets;
    std::string output_dir;
    std::string mnist_dir;
    long long seed = -1;
    long long n_runs = -1;
    int threads = -1;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("-c,--config", c.config_path, "experiment JSON file");
    cmd->add_option("--set", c.sets, "override a top-level key, key=value (repeatable)");
    cmd->add_option("-o,--output-dir", c.output_dir, "output directory");
    cmd->add_option("--mnist-dir", c.mnist_dir, "directory holding the MNIST IDX files");
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--n-runs", c.n_runs, "runs per configuration");
    cmd->add_option("--threads", c.threads, "OpenMP threads (0 = all)");
}

qlw::cli::ExperimentConfig resolve(const Common &c) {
    nlohmann::json doc = c.config_path.empty() ? nlohmann::json::object()
                                               : qlw::cli::read_json_file(c.config_path);
    for (const auto &kv : c.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw qlw::ConfigError("--set", "expected key=value, got '" + kv + "'");
        }
        qlw::cli::apply_override(doc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!c.output_dir.empty()) doc["output_dir"] = c.output_dir;
    if (!c.mnist_dir.empty()) doc["mnist_dir"] = c.mnist_dir;
    if (c.seed >= 0) doc["seed"] = c.seed;
    if (c.n_runs >= 0) doc["n_runs"] = c.n_runs;
    if (c.threads >= 0) doc["threads"] = c.threads;
    auto cfg = qlw::cli::parse_config(doc);
    if (cfg.threads > 0) {
        omp_set_num_threads(cfg.threads);
    }
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Layerwise and complete-depth training of parameterized quantum circuits"};
    app.require_subcommand(1);

    Common common;
    auto *scan = app.add_subcommand("variance-scan", "gradient variance over qubits and depth");
    auto *train = app.add_subcommand("train", "repeated training runs of one configuration");
    auto *sweep = app.add_subcommand("sweep", "resumable runs over several configurations");
    auto *encode = app.add_subcommand("encode", "PCA-encode the MNIST subset to CSV");
    for (auto *cmd : {scan, train, sweep, encode}) {
        add_common(cmd, common);
    }
    std::string runs_csv;
    std::string report_dir = "out";
    auto *report = app.add_subcommand("report", "recompute curves from runs.csv");
    report->add_option("--runs", runs_csv, "runs.csv to read")->required();
    report->add_option("-o,--output-dir", report_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) {
            qlw::cli::run_report(runs_csv, report_dir, std::cout);
            return 0;
        }
        const auto cfg = resolve(common);
        if (scan->parsed()) {
            qlw::cli::run_variance_scan(cfg, std::cout);
        } else if (train->parsed()) {
            qlw::cli::run_train(cfg, std::cout);
        } else if (sweep->parsed()) {
            qlw::cli::run_sweep(cfg, std::cout);
        } else if (encode->parsed()) {
            qlw::cli::run_encode(cfg, std::cout);
        }
    } catch (const qlw::ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const qlw::UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
