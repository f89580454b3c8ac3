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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlw/circuits/template.hpp"
#include "qlw/gradients/gradients.hpp"
#include "qlw/training/params.hpp"
#include "qlw/training/schedule.hpp"

namespace qlw::training {

using gradients::LabeledSample;

struct Dataset {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
};

struct TrainOptions {
    std::uint64_t shots = 0;  ///< measurements per expectation; 0 means exact
    double eta = 0.01;
    std::size_t batch_size = 20;
    std::uint64_t seed = 0;
    std::string strategy = "ll";
    std::string config_label;
    std::string run_id;
    /// Optional observer, called with the parameter values when each segment starts
    /// (`finished` false) and when it completes (`finished` true).
    std::function<void(std::size_t segment, bool finished, std::span<const double> params)>
        observer;
};

struct EpochRow {
    std::size_t epoch = 0;  ///< 1-based, counted across segments
    std::size_t segment = 0;
    std::size_t n_trainable = 0;
    double train_loss = 0.0;
    double test_error = 0.0;
    std::uint64_t cumulative_measurements = 0;  ///< r_i, gradient shots only
    double wall_seconds_estimate = 0.0;
    std::uint64_t forward_measurements = 0;     ///< cumulative forward-pass shots
};

struct RunRecord {
    std::string run_id;
    std::string strategy;
    std::string config_label;
    std::uint64_t seed = 0;
    bool diverged = false;
    std::vector<EpochRow> rows;
    nlohmann::json config;  ///< snapshot of the settings that produced the run

    bool operator==(const RunRecord &other) const;
};

/// Mean exact cross entropy of the circuit over `samples`.
[[nodiscard]] double dataset_loss(const circuits::CircuitTemplate &tmpl,
                                  std::span<const double> params,
                                  std::span<const LabeledSample> samples);

/// Fraction misclassified with exact expectations; rescaled readout <= 0.5 predicts class 0.
[[nodiscard]] double test_error(const circuits::CircuitTemplate &tmpl,
                                std::span<const double> params,
                                std::span<const LabeledSample> samples);

/// Runs `schedule` on `full_template` (whose depth must equal the schedule's final depth).
///
/// Per segment: the circuit is grown to the segment depth with zero angles, a fresh Adam
/// state is created for the trainable slots, and `epochs` epochs of shuffled mini-batch
/// updates run. After each epoch the exact training loss and test error are recorded with
/// the cumulative measurement count.
[[nodiscard]] RunRecord train(const TrainingSchedule &schedule,
                              const circuits::CircuitTemplate &full_template,
                              const Dataset &data, const TrainOptions &options);

/// Initial angles for `n` slots under `mode`, drawn from the run's init stream.
[[nodiscard]] std::vector<double> initial_angles(std::size_t n, InitMode mode, std::uint64_t seed);

} // namespace qlw::training
