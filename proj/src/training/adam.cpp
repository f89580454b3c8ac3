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

#include "qlw/training/adam.hpp"

#include <algorithm>
#include <cmath>

#include "qlw/errors.hpp"

namespace qlw::training {

bool adam_step(AdamState &state, std::span<const double> grads, ParameterStore &params) {
    const auto slots = params.trainable_slots();
    if (grads.size() != slots.size() || state.m1.size() != slots.size() ||
        state.m2.size() != slots.size()) {
        throw UsageError("gradient, moment and trainable-slot counts must agree");
    }
    if (!std::all_of(grads.begin(), grads.end(), [](double g) { return std::isfinite(g); })) {
        return false;
    }
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    auto values = params.values();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const double g = grads[i];
        state.m1[i] = state.beta1 * state.m1[i] + (1.0 - state.beta1) * g;
        state.m2[i] = state.beta2 * state.m2[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.m1[i] / c1;
        const double v_hat = state.m2[i] / c2;
        values[slots[i]] -= state.eta * m_hat / (std::sqrt(v_hat) + state.eps);
    }
    return true;
}

} // namespace qlw::training
