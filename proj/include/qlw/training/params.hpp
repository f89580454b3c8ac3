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
#include <span>
#include <vector>

namespace qlw::training {

/// Flat angle vector (radians) with a trainable flag per slot.
class ParameterStore {
  public:
    ParameterStore() = default;
    explicit ParameterStore(std::size_t n) : values_(n, 0.0), trainable_(n, 0) {}
    explicit ParameterStore(std::vector<double> values)
        : values_(std::move(values)), trainable_(values_.size(), 0) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] bool trainable(std::size_t slot) const { return trainable_.at(slot) != 0; }

    /// Appends `count` zero angles, frozen.
    void extend_zero(std::size_t count);
    /// Marks exactly `slots` trainable and freezes everything else.
    void set_trainable(std::span<const std::size_t> slots);
    [[nodiscard]] std::vector<std::size_t> trainable_slots() const;
    [[nodiscard]] bool all_finite() const noexcept;

  private:
    std::vector<double> values_;
    std::vector<unsigned char> trainable_;
};

} // namespace qlw::training
