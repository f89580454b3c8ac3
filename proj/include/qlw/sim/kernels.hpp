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
 * Amplitude-update kernels.
 *
 * The kernels in `qlw::sim::kernels` split the amplitude loop across OpenMP
 * threads once the state is large enough for the fork to pay off. The
 * `qlw::sim::reference` kernels are plain serial 2x2-matrix updates; they are
 * kept as the baseline for tests and the benchmark.
 */

#include <cstddef>

#include "qlw/sim/state.hpp"

namespace qlw::sim {

/// States with at least this many amplitudes are updated in parallel.
inline constexpr std::size_t kParallelDim = std::size_t{1} << 14;

namespace kernels {

void rotation(Amplitude *amps, std::size_t dim, std::size_t mask, Axis axis, double angle);
void pauli(Amplitude *amps, std::size_t dim, std::size_t mask, Axis axis);
void hadamard(Amplitude *amps, std::size_t dim, std::size_t mask);
void cz(Amplitude *amps, std::size_t dim, std::size_t mask_a, std::size_t mask_b);
void signs(Amplitude *amps, std::size_t dim, const double *signs);

} // namespace kernels

namespace reference {

/// Applies the 2x2 matrix {{m00, m01}, {m10, m11}} to the qubit selected by `mask`.
void single_qubit(StateVector &state, std::size_t qubit, const Amplitude (&matrix)[2][2]);
void rotation(StateVector &state, std::size_t qubit, Axis axis, double angle);
void cz(StateVector &state, std::size_t a, std::size_t b);
double expectation_z(const StateVector &state, std::size_t qubit);

} // namespace reference

} // namespace qlw::sim
