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

#include "qlw/training/params.hpp"

namespace qlw::training {

/// Adam moments for one trainable slot set; beta and eps at their usual defaults.
struct AdamState {
    std::vector<double> m1;
    std::vector<double> m2;
    std::size_t step = 0;
    double eta = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    AdamState() = default;
    AdamState(std::size_t n_trainable, double eta)
        : m1(n_trainable, 0.0), m2(n_trainable, 0.0), eta(eta) {}
};

/// One bias-corrected Adam update of the slots marked trainable in `params`; `grads` lists
/// those slots in ascending order. Returns false, leaving everything untouched, if a gradient
/// is not finite.
bool adam_step(AdamState &state, std::span<const double> grads, ParameterStore &params);

} // namespace qlw::training
