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

#include "qlw/training/loss.hpp"

#include <algorithm>
#include <cmath>

namespace qlw::training {

double clip_probability(double e) noexcept { return std::clamp(e, kClipLow, kClipHigh); }

double bce_loss(double e, int label) noexcept {
    const double p = clip_probability(e);
    const double y = label != 0 ? 1.0 : 0.0;
    return -(y * std::log(p) + (1.0 - y) * std::log1p(-p));
}

double bce_grad(double e, int label) noexcept {
    const double p = clip_probability(e);
    const double y = label != 0 ? 1.0 : 0.0;
    return -y / p + (1.0 - y) / (1.0 - p);
}

} // namespace qlw::training
