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
 * Layered circuit templates.
 *
 * A template is an optional prefix (Hadamard wall or data-encoding layer)
 * followed by layers. Layer k holds one rotation per qubit, whose angle lives
 * in parameter slot k * n_qubits + qubit, then a set of CZ gates. Templates
 * carry gate structure only; angles are supplied separately at run time.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlw/rng.hpp"
#include "qlw/sim/state.hpp"

namespace qlw::circuits {

using sim::Axis;
using CzPair = std::pair<std::size_t, std::size_t>;

struct Layer {
    std::vector<Axis> axes;         ///< rotation axis per qubit
    std::vector<CzPair> entangler;  ///< unordered pairs, stored with first < second

    bool operator==(const Layer &) const = default;
};

enum class PrefixKind : std::uint8_t { None, HadamardWall, DataLayer };

/// Concrete prefix instance. For a data layer, `features` holds one angle per qubit and
/// qubit i receives exp(-i * features[i] * X_i).
struct Prefix {
    PrefixKind kind = PrefixKind::None;
    std::vector<double> features;
};

class CircuitTemplate {
  public:
    explicit CircuitTemplate(std::size_t n_qubits, PrefixKind prefix = PrefixKind::None);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] PrefixKind prefix() const noexcept { return prefix_; }
    [[nodiscard]] std::size_t readout_qubit() const noexcept { return readout_; }
    [[nodiscard]] std::size_t depth() const noexcept { return layers_.size(); }
    [[nodiscard]] std::size_t n_params() const noexcept { return layers_.size() * n_qubits_; }
    [[nodiscard]] std::span<const Layer> layers() const noexcept { return layers_; }
    [[nodiscard]] const Layer &layer(std::size_t k) const { return layers_.at(k); }

    /// Diagonal of layer k's CZ set (+1/-1 per basis index).
    [[nodiscard]] std::span<const double> entangler_signs(std::size_t k) const {
        return sign_masks_.at(k);
    }

    void set_readout_qubit(std::size_t qubit);
    void append_layer(Layer layer);
    /// Replaces the rotation axes of layers [first, first + block.size()).
    void replace_layers(std::size_t first, std::span<const Layer> block);

    /// Copy restricted to the first `depth` layers.
    [[nodiscard]] CircuitTemplate truncated(std::size_t depth) const;

    [[nodiscard]] nlohmann::json to_json() const;
    static CircuitTemplate from_json(const nlohmann::json &doc);

    bool operator==(const CircuitTemplate &other) const {
        return n_qubits_ == other.n_qubits_ && prefix_ == other.prefix_ &&
               readout_ == other.readout_ && layers_ == other.layers_;
    }

  private:
    std::size_t n_qubits_;
    PrefixKind prefix_;
    std::size_t readout_;
    std::vector<Layer> layers_;
    std::vector<std::vector<double>> sign_masks_;
};

/// All n(n-1)/2 pairs (i, j), i < j, in lexicographic order.
[[nodiscard]] std::vector<CzPair> all_to_all_entangler(std::size_t n_qubits);

/// One rotation per qubit with an axis drawn uniformly from {X, Y, Z}; all-to-all CZ.
/// A single qubit gets an empty entangler.
[[nodiscard]] Layer random_layer(std::size_t n_qubits, Rng &rng);

/// If no rotation in `block` is about X, reassigns one uniformly chosen rotation to X.
/// Returns true when a slot was changed.
bool enforce_x_in_block(std::span<Layer> block, Rng &rng);

[[nodiscard]] Prefix data_layer(std::span<const double> features);
[[nodiscard]] Prefix hadamard_wall();

/// Applies the prefix to `state` in place.
void apply_prefix(sim::StateVector &state, const Prefix &prefix);

/// Appends `p` random layers. Layer k is drawn from the stream keyed (seed, k), so the
/// result does not depend on how the growth is split into calls.
[[nodiscard]] CircuitTemplate grow(const CircuitTemplate &tmpl, std::size_t p, std::uint64_t seed);

/// Enforces an X rotation in layers [first, first + count), keyed by (seed, first).
void enforce_x_in_range(CircuitTemplate &tmpl, std::size_t first, std::size_t count,
                        std::uint64_t seed);

/// Random template of `depth` layers with no X enforcement.
[[nodiscard]] CircuitTemplate random_template(std::size_t n_qubits, std::size_t depth,
                                              PrefixKind prefix, std::uint64_t seed);

/// Template for layerwise training: `start` initial layers, then groups of `p` layers up to
/// `total` layers, with an X rotation enforced in the initial group and in every added group.
[[nodiscard]] CircuitTemplate layerwise_template(std::size_t n_qubits, std::size_t start,
                                                 std::size_t p, std::size_t total,
                                                 std::uint64_t seed);

/// Template for complete-depth training: same layer draws, X enforced once over the circuit.
[[nodiscard]] CircuitTemplate complete_depth_template(std::size_t n_qubits, std::size_t total,
                                                      std::uint64_t seed);

} // namespace qlw::circuits
