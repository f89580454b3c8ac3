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

namespace qlw::training {

inline constexpr double kClipLow = 1e-15;
inline constexpr double kClipHigh = 1.0 - 1e-15;

/// Clips a probability to [1e-15, 1 - 1e-15].
[[nodiscard]] double clip_probability(double e) noexcept;

/// Binary cross entropy -(y ln E + (1 - y) ln(1 - E)) on the clipped E.
[[nodiscard]] double bce_loss(double e, int label) noexcept;

/// d bce / dE = -y/E + (1 - y)/(1 - E) on the clipped E.
[[nodiscard]] double bce_grad(double e, int label) noexcept;

/// Readout <Z> in [-1, 1] rescaled to a class-1 probability in [0, 1].
[[nodiscard]] constexpr double rescale_readout(double z) noexcept { return 0.5 * (1.0 + z); }

} // namespace qlw::training
