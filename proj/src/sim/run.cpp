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

#include "qlw/sim/run.hpp"

#include <string>

#include "qlw/errors.hpp"
#include "qlw/sim/kernels.hpp"

namespace qlw::sim {
namespace {

void check_params(const circuits::CircuitTemplate &tmpl, std::span<const double> params) {
    if (params.size() != tmpl.n_params()) {
        throw UsageError("template has " + std::to_string(tmpl.n_params()) +
                         " parameter slots but " + std::to_string(params.size()) +
                         " angles were given");
    }
}

void check_state(const circuits::CircuitTemplate &tmpl, const StateVector &state) {
    if (state.n_qubits() != tmpl.n_qubits()) {
        throw UsageError("input state has " + std::to_string(state.n_qubits()) +
                         " qubits, template has " + std::to_string(tmpl.n_qubits()));
    }
}

void rotations_of(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                  StateVector &state, std::size_t k) {
    const auto &layer = tmpl.layer(k);
    const std::size_t n = tmpl.n_qubits();
    for (std::size_t q = 0; q < n; ++q) {
        kernels::rotation(state.amplitudes().data(), state.dim(), state.mask(q), layer.axes[q],
                          params[k * n + q]);
    }
}

void entangler_of(const circuits::CircuitTemplate &tmpl, StateVector &state, std::size_t k) {
    if (!tmpl.layer(k).entangler.empty()) {
        kernels::signs(state.amplitudes().data(), state.dim(), tmpl.entangler_signs(k).data());
    }
}

} // namespace

void prepare_input(const circuits::CircuitTemplate &tmpl, StateVector &state,
                   std::span<const double> features) {
    check_state(tmpl, state);
    switch (tmpl.prefix()) {
    case circuits::PrefixKind::None:
        return;
    case circuits::PrefixKind::HadamardWall:
        circuits::apply_prefix(state, circuits::hadamard_wall());
        return;
    case circuits::PrefixKind::DataLayer:
        circuits::apply_prefix(state, circuits::data_layer(features));
        return;
    }
}

void apply_layers(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                  StateVector &state, std::size_t first, std::size_t last) {
    check_params(tmpl, params);
    check_state(tmpl, state);
    if (first > last || last > tmpl.depth()) {
        throw UsageError("layer range out of bounds");
    }
    for (std::size_t k = first; k < last; ++k) {
        rotations_of(tmpl, params, state, k);
        entangler_of(tmpl, state, k);
    }
}

void apply_suffix_after_rotations(const circuits::CircuitTemplate &tmpl,
                                  std::span<const double> params, StateVector &state,
                                  std::size_t k) {
    if (k >= tmpl.depth()) {
        throw UsageError("layer index out of range");
    }
    entangler_of(tmpl, state, k);
    apply_layers(tmpl, params, state, k + 1, tmpl.depth());
}

StateVector run_circuit(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                        StateVector input, std::span<const double> features) {
    check_params(tmpl, params);
    prepare_input(tmpl, input, features);
    apply_layers(tmpl, params, input, 0, tmpl.depth());
    return input;
}

double circuit_expectation(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                           const StateVector &input, std::span<const double> features) {
    return expectation_z(run_circuit(tmpl, params, input, features), tmpl.readout_qubit());
}

} // namespace qlw::sim
