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

#include "qlw/cli/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "qlw/data/dataset.hpp"
#include "qlw/errors.hpp"
#include "qlw/experiments/multi_run.hpp"
#include "qlw/experiments/variance_scan.hpp"
#include "qlw/training/record_io.hpp"

namespace qlw::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string snapshot(const ExperimentConfig &cfg) { return "config=" + cfg.document.dump(); }

std::ofstream open_out(const fs::path &path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path.string());
    }
    return out;
}

std::vector<training::LabeledSample> read_samples(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return data::read_encoded_csv(in);
}

void write_aggregates(const std::vector<training::RunRecord> &records, const fs::path &dir,
                      const std::string &comment, std::ostream &log) {
    const auto stats = experiments::group_by_config(records);
    auto curves = open_out(dir / "curves.csv");
    experiments::write_curves_csv(curves, stats, comment);
    auto runtime = open_out(dir / "runtime_curve.csv");
    experiments::write_runtime_csv(runtime, stats, comment);
    for (const auto &s : stats) {
        log << s.label << ": " << s.runs.size() << " runs, success probability at 0.5 = "
            << experiments::success_probability(s.runs, 0.5) << '\n';
    }
}

} // namespace

training::Dataset load_dataset(const ExperimentConfig &cfg) {
    training::Dataset data;
    if (!cfg.encoded_train.empty()) {
        data.train = read_samples(cfg.encoded_train);
        data.test = read_samples(cfg.encoded_test);
    } else {
        const auto raw = data::load_mnist_dir(cfg.mnist_dir);
        auto encoded = data::prepare_dataset(raw, cfg.encode);
        data.train = std::move(encoded.train);
        data.test = std::move(encoded.test);
    }
    if (data.train.empty() || data.test.empty()) {
        throw ParseError("dataset has an empty train or test split");
    }
    if (data.train.front().features.size() != cfg.run.n_qubits) {
        throw ConfigError("n_qubits", "does not match the feature count of the dataset (" +
                                          std::to_string(data.train.front().features.size()) + ")");
    }
    return data;
}

void run_variance_scan(const ExperimentConfig &cfg, std::ostream &log) {
    log << "variance scan: " << cfg.scan.qubits.size() << " qubit counts x "
        << cfg.scan.layers.size() << " depths, " << cfg.scan.trials << " trials\n";
    const auto result = experiments::variance_scan(cfg.scan.qubits, cfg.scan.layers,
                                                   cfg.scan.trials, cfg.seed, cfg.scan.all_slots);
    auto out = open_out(cfg.output_dir / "variance_scan.csv");
    experiments::write_variance_csv(out, result, snapshot(cfg));
    log << "wrote " << (cfg.output_dir / "variance_scan.csv").string() << '\n';
}

void run_train(const ExperimentConfig &cfg, std::ostream &log) {
    const auto data = load_dataset(cfg);
    const auto stats = experiments::multi_run(cfg.run, data, cfg.n_runs, cfg.seed);

    auto runs = open_out(cfg.output_dir / "runs.csv");
    training::write_runs_csv(runs, stats.runs, snapshot(cfg));

    json summary;
    summary["config"] = cfg.document;
    summary["label"] = stats.label;
    summary["n_runs"] = stats.runs.size();
    json per_run = json::array();
    for (const auto &r : stats.runs) {
        const auto &last = r.rows.back();
        per_run.push_back({{"run_id", r.run_id},
                           {"seed", r.seed},
                           {"diverged", r.diverged},
                           {"epochs", last.epoch},
                           {"final_train_loss", training::format_real(last.train_loss)},
                           {"final_test_error", experiments::final_test_error(r)},
                           {"cumulative_measurements", last.cumulative_measurements}});
    }
    summary["runs"] = per_run;
    summary["success_probability_0_5"] = experiments::success_probability(stats.runs, 0.5);
    auto out = open_out(cfg.output_dir / "summary.json");
    out << std::setw(2) << summary << '\n';
    log << "wrote " << stats.runs.size() << " runs to " << cfg.output_dir.string() << '\n';
}

void run_sweep(const ExperimentConfig &cfg, std::ostream &log) {
    const auto configs =
        cfg.sweep.empty() ? std::vector<experiments::RunConfig>{cfg.run} : cfg.sweep;
    const auto data = load_dataset(cfg);
    const fs::path run_dir = cfg.output_dir / "runs";
    fs::create_directories(run_dir);

    experiments::MultiRunHooks hooks;
    hooks.cached = [&](const std::string &id) -> std::optional<training::RunRecord> {
        std::ifstream in(run_dir / (id + ".csv"));
        if (!in) {
            return std::nullopt;
        }
        try {
            auto records = training::read_runs_csv(in);
            if (records.size() == 1 && records.front().run_id == id) {
                return records.front();
            }
        } catch (const ParseError &) {
            // partial file from an interrupted run; recompute
        }
        return std::nullopt;
    };
    hooks.completed = [&](const training::RunRecord &record) {
        const auto tmp = run_dir / (record.run_id + ".csv.tmp");
        {
            auto out = open_out(tmp);
            const std::vector<training::RunRecord> one{record};
            training::write_runs_csv(out, one);
        }
        fs::rename(tmp, run_dir / (record.run_id + ".csv"));
    };

    std::vector<training::RunRecord> all;
    for (const auto &c : configs) {
        log << "config " << c.effective_label() << ": " << cfg.n_runs << " runs\n";
        auto stats = experiments::multi_run(c, data, cfg.n_runs, cfg.seed, hooks);
        for (auto &r : stats.runs) {
            all.push_back(std::move(r));
        }
    }
    auto runs = open_out(cfg.output_dir / "runs.csv");
    training::write_runs_csv(runs, all, snapshot(cfg));
    write_aggregates(all, cfg.output_dir, snapshot(cfg), log);
}

void run_encode(const ExperimentConfig &cfg, std::ostream &log) {
    const auto raw = data::load_mnist_dir(cfg.mnist_dir);
    auto options = cfg.encode;
    const auto encoded = data::prepare_dataset(raw, options);
    auto train = open_out(cfg.output_dir / "encoded_train.csv");
    data::write_encoded_csv(train, encoded.train);
    auto test = open_out(cfg.output_dir / "encoded_test.csv");
    data::write_encoded_csv(test, encoded.test);
    json model = encoded.model.to_json();
    model["config"] = cfg.document;
    auto out = open_out(cfg.output_dir / "pca_model.json");
    out << std::setw(2) << model << '\n';
    log << "encoded " << encoded.train.size() << " train and " << encoded.test.size()
        << " test images\n";
}

void run_report(const fs::path &runs_csv, const fs::path &output_dir, std::ostream &log) {
    std::ifstream in(runs_csv);
    if (!in) {
        throw UsageError("cannot open " + runs_csv.string());
    }
    const auto records = training::read_runs_csv(in);
    write_aggregates(records, output_dir, "source=" + runs_csv.string(), log);
}

} // namespace qlw::cli
