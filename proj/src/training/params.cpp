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

#include "qlw/training/params.hpp"

#include <algorithm>
#include <cmath>

#include "qlw/errors.hpp"

namespace qlw::training {

void ParameterStore::extend_zero(std::size_t count) {
    values_.resize(values_.size() + count, 0.0);
    trainable_.resize(values_.size(), 0);
}

void ParameterStore::set_trainable(std::span<const std::size_t> slots) {
    std::fill(trainable_.begin(), trainable_.end(), 0);
    for (const auto s : slots) {
        if (s >= values_.size()) {
            throw UsageError("trainable slot out of range");
        }
        trainable_[s] = 1;
    }
}

std::vector<std::size_t> ParameterStore::trainable_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < trainable_.size(); ++i) {
        if (trainable_[i]) {
            out.push_back(i);
        }
    }
    return out;
}

bool ParameterStore::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

} // namespace qlw::training
