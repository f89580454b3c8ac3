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

#include "qlw/circuits/template.hpp"
#include "qlw/sim/state.hpp"

namespace qlw::sim {

/// Applies the template prefix to `input`. For a data-layer prefix `features` supplies the
/// encoding angles; other prefixes ignore it.
void prepare_input(const circuits::CircuitTemplate &tmpl, StateVector &state,
                   std::span<const double> features = {});

/// Applies layers [first, last) of `tmpl` with angles from `params`.
void apply_layers(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                  StateVector &state, std::size_t first, std::size_t last);

/// Applies only the CZ set of layer k, then layers [k + 1, depth).
void apply_suffix_after_rotations(const circuits::CircuitTemplate &tmpl,
                                  std::span<const double> params, StateVector &state,
                                  std::size_t k);

/// Prefix, then every layer in order. `params.size()` must equal `tmpl.n_params()`.
[[nodiscard]] StateVector run_circuit(const circuits::CircuitTemplate &tmpl,
                                      std::span<const double> params, StateVector input,
                                      std::span<const double> features = {});

/// Exact readout expectation <Z_readout> of the full circuit.
[[nodiscard]] double circuit_expectation(const circuits::CircuitTemplate &tmpl,
                                         std::span<const double> params,
                                         const StateVector &input,
                                         std::span<const double> features = {});

} // namespace qlw::sim
