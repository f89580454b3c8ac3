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
 * Parameter-shift gradients of the readout expectation, exact or shot-sampled.
 *
 * Shifted expectations use the half-angle shift rule
 *   dE/dtheta = r * (E(theta + s) - E(theta - s)),  r = 1/2, s = pi/2.
 *
 * In shot mode every expectation is an independent m-shot estimate drawn from
 * the stream keyed by (estimator seed, sample index, slot, shift sign), so
 * results are identical whatever the thread count or evaluation order.
 */

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "qlw/circuits/template.hpp"
#include "qlw/sim/state.hpp"

namespace qlw::gradients {

inline constexpr double kShiftScale = 0.5;                           // r
inline constexpr double kShift = std::numbers::pi / (4.0 * kShiftScale); // s

/// Readout expectations are exact or estimated from `shots` measurements.
struct Estimator {
    std::uint64_t shots = 0; ///< 0 selects exact expectations
    std::uint64_t seed = 0;

    static Estimator exact() noexcept { return {}; }
    static Estimator sampled(std::uint64_t shots, std::uint64_t seed);

    [[nodiscard]] bool is_exact() const noexcept { return shots == 0; }
    /// Shots charged per expectation in the measurement ledger (1 for exact mode).
    [[nodiscard]] std::uint64_t charged_shots() const noexcept { return shots == 0 ? 1 : shots; }
};

enum class Draw : std::uint64_t { Plus = 0, Minus = 1, Forward = 2 };

/// Stream for one expectation estimate.
[[nodiscard]] Rng draw_stream(const Estimator &est, std::uint64_t sample, std::uint64_t slot,
                              Draw draw) noexcept;

/// Applies `est` to an exact expectation value.
[[nodiscard]] double estimate(const Estimator &est, double exact_z, std::uint64_t sample,
                              std::uint64_t slot, Draw draw);

struct LabeledSample {
    std::vector<double> features;
    int label = 0;
};

/// Exact readout expectation and its +s / -s shifted values for each requested slot.
struct ShiftedExpectations {
    double forward = 0.0;
    std::vector<double> plus;
    std::vector<double> minus;
};

/// Computes the shifted expectations with one forward pass plus one suffix pass per slot.
[[nodiscard]] ShiftedExpectations
shifted_expectations(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                     std::span<const std::size_t> slots, const sim::StateVector &input,
                     std::span<const double> features = {});

/// d<Z_readout>/d theta_slot by the shift rule.
[[nodiscard]] double shift_grad(const circuits::CircuitTemplate &tmpl,
                                std::span<const double> params, std::size_t slot,
                                const sim::StateVector &input, const Estimator &est,
                                std::span<const double> features = {});

/// Central finite difference of the exact readout expectation.
[[nodiscard]] double fd_grad(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                             std::size_t slot, const sim::StateVector &input, double h,
                             std::span<const double> features = {});

struct BatchGradient {
    std::vector<double> grad;          ///< d loss / d theta, one entry per trainable slot
    double loss = 0.0;                 ///< mean cross entropy of the forward estimates
    std::uint64_t gradient_shots = 0;  ///< 2 * n_p * m * b
    std::uint64_t forward_shots = 0;   ///< m * b
};

/// Batch-averaged cross-entropy gradient over `trainable` slots. Circuit inputs are |0...0>
/// passed through the template prefix with each sample's features. Samples are evaluated
/// in parallel.
[[nodiscard]] BatchGradient batch_loss_grad(const circuits::CircuitTemplate &tmpl,
                                            std::span<const double> params,
                                            std::span<const std::size_t> trainable,
                                            std::span<const LabeledSample> batch,
                                            const Estimator &est);

namespace reference {

/// Serial batch gradient that evaluates every shifted circuit from scratch.
[[nodiscard]] BatchGradient batch_loss_grad(const circuits::CircuitTemplate &tmpl,
                                            std::span<const double> params,
                                            std::span<const std::size_t> trainable,
                                            std::span<const LabeledSample> batch,
                                            const Estimator &est);

/// Shift rule evaluated with two full circuit runs.
[[nodiscard]] double shift_grad(const circuits::CircuitTemplate &tmpl,
                                std::span<const double> params, std::size_t slot,
                                const sim::StateVector &input, const Estimator &est,
                                std::span<const double> features = {});

} // namespace reference

} // namespace qlw::gradients
