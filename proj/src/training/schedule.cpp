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

#include "qlw/training/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "qlw/errors.hpp"

namespace qlw::training {
namespace {

std::vector<std::size_t> layer_range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t k = first; k < last; ++k) {
        out.push_back(k);
    }
    return out;
}

} // namespace

std::vector<std::size_t> Segment::slots(std::size_t n_qubits) const {
    std::vector<std::size_t> out;
    out.reserve(layers.size() * n_qubits);
    for (const auto k : layers) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            out.push_back(k * n_qubits + q);
        }
    }
    return out;
}

std::size_t TrainingSchedule::total_epochs() const noexcept {
    std::size_t total = 0;
    for (const auto &s : segments) {
        total += s.epochs;
    }
    return total;
}

std::size_t TrainingSchedule::final_depth() const noexcept {
    return segments.empty() ? 0 : segments.back().depth;
}

TrainingSchedule ll_schedule(const LayerwiseOptions &o) {
    if (o.start_layers == 0) {
        throw UsageError("layerwise schedule needs s >= 1");
    }
    if (o.layers_per_step == 0) {
        throw UsageError("layerwise schedule needs p >= 1");
    }
    if (o.freeze_window < o.layers_per_step) {
        throw UsageError("layerwise schedule needs q >= p");
    }
    if (!(o.phase_two_fraction > 0.0 && o.phase_two_fraction <= 1.0)) {
        throw UsageError("layerwise schedule needs 0 < r <= 1");
    }
    if (o.epochs_per_segment == 0) {
        throw UsageError("layerwise schedule needs e_l >= 1");
    }
    if (o.total_layers < o.start_layers ||
        (o.total_layers - o.start_layers) % o.layers_per_step != 0) {
        throw UsageError("total layers must equal s + k*p for an integer k >= 0");
    }

    TrainingSchedule schedule;
    schedule.init = InitMode::Zero;

    // Phase one: the start layers on their own, then one segment per growth step.
    schedule.segments.push_back(
        {o.start_layers, layer_range(0, o.start_layers), o.epochs_per_segment, Phase::One});
    for (std::size_t depth = o.start_layers + o.layers_per_step; depth <= o.total_layers;
         depth += o.layers_per_step) {
        const std::size_t window_start = depth > o.freeze_window ? depth - o.freeze_window : 0;
        auto layers = layer_range(window_start, depth);
        if (o.initial_always_active) {
            for (std::size_t k = 0; k < std::min(o.start_layers, window_start); ++k) {
                layers.push_back(k);
            }
            std::sort(layers.begin(), layers.end());
        }
        schedule.segments.push_back({depth, std::move(layers), o.epochs_per_segment, Phase::One});
    }

    // Phase two: ceil(1/r) contiguous blocks, sizes as equal as possible, smaller ones first.
    const auto wanted = static_cast<std::size_t>(std::ceil(1.0 / o.phase_two_fraction - 1e-9));
    const std::size_t blocks = std::clamp<std::size_t>(wanted, 1, o.total_layers);
    const std::size_t base = o.total_layers / blocks;
    const std::size_t larger = o.total_layers % blocks;
    for (std::size_t sweep = 0; sweep < o.sweeps; ++sweep) {
        std::size_t first = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t size = base + (b >= blocks - larger ? 1 : 0);
            schedule.segments.push_back({o.total_layers, layer_range(first, first + size),
                                         o.epochs_per_segment, Phase::Two});
            first += size;
        }
    }
    return schedule;
}

TrainingSchedule cdl_schedule(std::size_t total_layers, std::size_t epochs, InitMode init) {
    if (total_layers == 0 || epochs == 0) {
        throw UsageError("complete-depth schedule needs at least one layer and one epoch");
    }
    TrainingSchedule schedule;
    schedule.init = init;
    schedule.segments.push_back({total_layers, layer_range(0, total_layers), epochs, Phase::One});
    return schedule;
}

std::string init_mode_name(InitMode mode) {
    return mode == InitMode::Zero ? "zero" : "uniform";
}

} // namespace qlw::training
