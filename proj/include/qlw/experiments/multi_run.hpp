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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlw/circuits/template.hpp"
#include "qlw/experiments/stats.hpp"
#include "qlw/training/schedule.hpp"
#include "qlw/training/trainer.hpp"

namespace qlw::experiments {

enum class Strategy : std::uint8_t { Layerwise, CdlZero, CdlRandom };

[[nodiscard]] std::string strategy_name(Strategy s);
[[nodiscard]] Strategy strategy_from_name(const std::string &name);

/// Everything that defines one training configuration, apart from the per-run seed.
struct RunConfig {
    Strategy strategy = Strategy::Layerwise;
    std::size_t n_qubits = 8;
    training::LayerwiseOptions layerwise;   ///< total_layers is used by every strategy
    std::size_t cdl_epochs = 100;
    std::uint64_t shots = 10;               ///< 0 means exact expectations
    double eta = 0.01;
    std::size_t batch_size = 20;
    std::uint64_t template_seed = 1;
    std::string label;                      ///< defaults to "<strategy>_eta<eta>"

    [[nodiscard]] std::string effective_label() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] training::TrainingSchedule build_schedule(const RunConfig &config);
[[nodiscard]] circuits::CircuitTemplate build_template(const RunConfig &config);

/// Seed of run `index` under `master_seed`.
[[nodiscard]] std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index);

/// Short stable hash of (config, master seed, run index).
[[nodiscard]] std::string run_id(const RunConfig &config, std::uint64_t master_seed,
                                 std::size_t index);

/// Single training run of `config` with an explicit seed.
[[nodiscard]] training::RunRecord run_once(const RunConfig &config,
                                           const training::Dataset &data, std::uint64_t seed,
                                           const std::string &id = {});

struct MultiRunHooks {
    /// Returns a stored record for a run id to skip recomputing it.
    std::function<std::optional<training::RunRecord>(const std::string &)> cached;
    /// Called after each freshly computed run, serialized across workers.
    std::function<void(const training::RunRecord &)> completed;
};

/// `n_runs` independent runs with seeds derived from `master_seed`, distributed over the
/// OpenMP worker pool; records come back in run-index order.
[[nodiscard]] AggregateStats multi_run(const RunConfig &config, const training::Dataset &data,
                                       std::size_t n_runs, std::uint64_t master_seed,
                                       const MultiRunHooks &hooks = {});

} // namespace qlw::experiments
