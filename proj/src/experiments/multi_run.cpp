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

#include "qlw/experiments/multi_run.hpp"

#include <cstdio>
#include <sstream>

#include "qlw/errors.hpp"
#include "qlw/training/record_io.hpp"

namespace qlw::experiments {
namespace {

constexpr std::uint64_t kRunStream = 0x52554eULL; // "RUN"

std::uint64_t fnv1a(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Layerwise:
        return "ll";
    case Strategy::CdlZero:
        return "cdl-zero";
    case Strategy::CdlRandom:
        return "cdl-random";
    }
    return "ll";
}

Strategy strategy_from_name(const std::string &name) {
    if (name == "ll") {
        return Strategy::Layerwise;
    }
    if (name == "cdl-zero") {
        return Strategy::CdlZero;
    }
    if (name == "cdl-random") {
        return Strategy::CdlRandom;
    }
    throw UsageError("unknown strategy '" + name + "' (expected ll, cdl-zero or cdl-random)");
}

std::string RunConfig::effective_label() const {
    if (!label.empty()) {
        return label;
    }
    std::ostringstream s;
    s << strategy_name(strategy) << "_eta" << eta;
    return s.str();
}

nlohmann::json RunConfig::to_json() const {
    return {{"strategy", strategy_name(strategy)},
            {"n_qubits", n_qubits},
            {"layers", layerwise.total_layers},
            {"s", layerwise.start_layers},
            {"p", layerwise.layers_per_step},
            {"q", layerwise.freeze_window},
            {"e_l", layerwise.epochs_per_segment},
            {"r", layerwise.phase_two_fraction},
            {"sweeps", layerwise.sweeps},
            {"initial_always_active", layerwise.initial_always_active},
            {"cdl_epochs", cdl_epochs},
            {"m", shots},
            {"eta", eta},
            {"b", batch_size},
            {"template_seed", template_seed},
            {"label", effective_label()}};
}

training::TrainingSchedule build_schedule(const RunConfig &config) {
    switch (config.strategy) {
    case Strategy::Layerwise:
        return training::ll_schedule(config.layerwise);
    case Strategy::CdlZero:
        return training::cdl_schedule(config.layerwise.total_layers, config.cdl_epochs,
                                      training::InitMode::Zero);
    case Strategy::CdlRandom:
        return training::cdl_schedule(config.layerwise.total_layers, config.cdl_epochs,
                                      training::InitMode::Uniform);
    }
    throw UsageError("unknown strategy");
}

circuits::CircuitTemplate build_template(const RunConfig &config) {
    if (config.strategy == Strategy::Layerwise) {
        return circuits::layerwise_template(config.n_qubits, config.layerwise.start_layers,
                                            config.layerwise.layers_per_step,
                                            config.layerwise.total_layers, config.template_seed);
    }
    return circuits::complete_depth_template(config.n_qubits, config.layerwise.total_layers,
                                             config.template_seed);
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index) {
    return derive_seed(master_seed, {kRunStream, index});
}

std::string run_id(const RunConfig &config, std::uint64_t master_seed, std::size_t index) {
    const auto h = fnv1a(config.to_json().dump() + "|" + std::to_string(master_seed) + "|" +
                         std::to_string(index));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%012llx",
                  static_cast<unsigned long long>(h & 0xffffffffffffULL));
    return buf;
}

training::RunRecord run_once(const RunConfig &config, const training::Dataset &data,
                             std::uint64_t seed, const std::string &id) {
    training::TrainOptions options;
    options.shots = config.shots;
    options.eta = config.eta;
    options.batch_size = config.batch_size;
    options.seed = seed;
    options.strategy = strategy_name(config.strategy);
    options.config_label = config.effective_label();
    options.run_id = id;
    auto record = training::train(build_schedule(config), build_template(config), data, options);
    record.config = config.to_json();
    return record;
}

AggregateStats multi_run(const RunConfig &config, const training::Dataset &data,
                         std::size_t n_runs, std::uint64_t master_seed,
                         const MultiRunHooks &hooks) {
    if (n_runs == 0) {
        throw UsageError("multi_run needs n_runs >= 1");
    }
    AggregateStats stats;
    stats.label = config.effective_label();
    stats.runs.resize(n_runs);
    const auto count = static_cast<std::ptrdiff_t>(n_runs);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto index = static_cast<std::size_t>(i);
        const auto id = run_id(config, master_seed, index);
        if (hooks.cached) {
            std::optional<training::RunRecord> stored;
#pragma omp critical(qlw_multi_run_io)
            stored = hooks.cached(id);
            if (stored) {
                stats.runs[index] = std::move(*stored);
                continue;
            }
        }
        stats.runs[index] = run_once(config, data, run_seed(master_seed, index), id);
        if (hooks.completed) {
#pragma omp critical(qlw_multi_run_io)
            hooks.completed(stats.runs[index]);
        }
    }
    return stats;
}

} // namespace qlw::experiments
