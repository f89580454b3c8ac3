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
 * Seedable random streams.
 *
 * Every random decision in the toolkit is drawn from a stream that is keyed by
 * a master seed and a tuple of integers naming the work item (layer index,
 * sample index, parameter slot, ...). Streams are cheap to construct, so
 * parallel workers derive their own stream instead of sharing one, and the
 * result of a computation never depends on scheduling order.
 *
 * The engine is SplitMix64; all distributions used here are implemented on
 * top of it so outputs are bit-identical across standard libraries.
 */

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace qlw {

/// Finalizer of SplitMix64; a bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a child seed from `seed` and an ordered list of keys.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed,
                                        std::initializer_list<std::uint64_t> keys) noexcept;

class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    /// Stream for the work item named by `keys` under `seed`.
    static Rng keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept {
        return Rng(derive_seed(seed, keys));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); unbiased. n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

  private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by `rng`.
template <class T> void shuffle(std::span<T> items, Rng &rng) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

} // namespace qlw
