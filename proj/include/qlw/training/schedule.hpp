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

/**
 * @file
 * Training schedules: ordered segments, each naming the circuit depth in use, the layers
 * whose angles are trained, and how many epochs to train them.
 *
 * Layerwise learning (LL) has two phases. Phase one starts from `start` layers and adds
 * `p` zero-initialized layers per step; each step trains the newest `q` layers (plus the
 * initial layers when they are kept active). Phase two splits the full-depth circuit into
 * ceil(1/r) contiguous blocks and trains them front to back for a number of sweeps.
 *
 * Complete-depth learning (CDL) is a single segment training every layer.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qlw::training {

enum class Phase : std::uint8_t { One = 1, Two = 2 };

enum class InitMode : std::uint8_t { Zero, Uniform };

struct Segment {
    std::size_t depth = 0;                ///< layers present in the circuit
    std::vector<std::size_t> layers;      ///< trainable layers, ascending
    std::size_t epochs = 0;
    Phase phase = Phase::One;

    /// Trainable parameter slots for a circuit on `n_qubits` qubits.
    [[nodiscard]] std::vector<std::size_t> slots(std::size_t n_qubits) const;
};

struct TrainingSchedule {
    std::vector<Segment> segments;
    InitMode init = InitMode::Zero;

    [[nodiscard]] std::size_t total_epochs() const noexcept;
    [[nodiscard]] std::size_t final_depth() const noexcept;
};

struct LayerwiseOptions {
    std::size_t total_layers = 21;
    std::size_t start_layers = 1;
    std::size_t layers_per_step = 2;  ///< p
    std::size_t freeze_window = 2;    ///< q
    std::size_t epochs_per_segment = 10;
    double phase_two_fraction = 0.5;  ///< r
    std::size_t sweeps = 2;
    bool initial_always_active = true;
};

[[nodiscard]] TrainingSchedule ll_schedule(const LayerwiseOptions &options);

[[nodiscard]] TrainingSchedule cdl_schedule(std::size_t total_layers, std::size_t epochs,
                                            InitMode init);

[[nodiscard]] std::string init_mode_name(InitMode mode);

} // namespace qlw::training
