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
 * Gradient-variance scan over random circuits.
 *
 * Each trial draws a random template (Hadamard wall, then layers with uniformly random
 * axes and all-to-all CZ sets), forces slot 0 to a Y rotation, draws every angle from
 * U(0, 2*pi), and takes the exact shift-rule gradient of <Z> on qubit 0. Each cell of the
 * (qubits, layers) grid reports the sample mean and variance over its trials.
 */

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qlw/circuits/template.hpp"

namespace qlw::experiments {

struct VarianceCell {
    std::size_t n_qubits = 0;
    std::size_t n_layers = 0;
    double mean = 0.0;
    double variance = 0.0;       ///< unbiased sample variance of the gradient
    double stderr_mean = 0.0;    ///< sqrt(variance / trials)
    double stderr_variance = 0.0;
};

struct VarianceScanResult {
    std::vector<VarianceCell> cells;  ///< qubit-major order
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool all_slots = false;

    [[nodiscard]] const VarianceCell &at(std::size_t n_qubits, std::size_t n_layers) const;
};

/// Random circuit and angles of one trial.
struct ScanInstance {
    circuits::CircuitTemplate tmpl;
    std::vector<double> angles;
};

[[nodiscard]] ScanInstance scan_instance(std::size_t n_qubits, std::size_t n_layers,
                                         std::size_t trial, std::uint64_t seed);

/// With `all_slots`, each trial contributes the gradient of every slot and the cell
/// statistics pool them; otherwise only slot 0 is used.
[[nodiscard]] VarianceScanResult variance_scan(std::span<const std::size_t> qubits,
                                               std::span<const std::size_t> layers,
                                               std::size_t trials, std::uint64_t seed,
                                               bool all_slots = false);

inline constexpr const char *kVarianceCsvHeader =
    "n_qubits,n_layers,variance,stderr,mean_gradient,mean_stderr";

/// `stderr` is the standard error of the variance estimate.
void write_variance_csv(std::ostream &out, const VarianceScanResult &result,
                        const std::string &comment = {});

} // namespace qlw::experiments
