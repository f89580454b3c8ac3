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

#include "qlw/circuits/template.hpp"

#include <algorithm>
#include <string>

#include "qlw/errors.hpp"

namespace qlw::circuits {
namespace {

constexpr std::uint64_t kLayerStream = 0x4c41594552ULL;   // "LAYER"
constexpr std::uint64_t kEnforceStream = 0x454e46ULL;     // "ENF"

void validate_layer(const Layer &layer, std::size_t n_qubits) {
    if (layer.axes.size() != n_qubits) {
        throw UsageError("layer must hold exactly one rotation per qubit");
    }
    std::vector<CzPair> seen;
    seen.reserve(layer.entangler.size());
    for (auto [a, b] : layer.entangler) {
        if (a >= n_qubits || b >= n_qubits || a == b) {
            throw UsageError("invalid CZ pair (" + std::to_string(a) + ", " + std::to_string(b) +
                             ")");
        }
        seen.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw UsageError("duplicate CZ pair in layer");
    }
}

const char *prefix_name(PrefixKind kind) {
    switch (kind) {
    case PrefixKind::None:
        return "none";
    case PrefixKind::HadamardWall:
        return "hadamard_wall";
    case PrefixKind::DataLayer:
        return "data_layer";
    }
    return "none";
}

PrefixKind prefix_from_name(const std::string &name) {
    if (name == "none") {
        return PrefixKind::None;
    }
    if (name == "hadamard_wall") {
        return PrefixKind::HadamardWall;
    }
    if (name == "data_layer") {
        return PrefixKind::DataLayer;
    }
    throw ParseError("unknown prefix kind '" + name + "'");
}

} // namespace

CircuitTemplate::CircuitTemplate(std::size_t n_qubits, PrefixKind prefix)
    : n_qubits_(n_qubits), prefix_(prefix), readout_(n_qubits == 0 ? 0 : n_qubits - 1) {
    if (n_qubits == 0 || n_qubits > 30) {
        throw UsageError("template needs between 1 and 30 qubits");
    }
}

void CircuitTemplate::set_readout_qubit(std::size_t qubit) {
    if (qubit >= n_qubits_) {
        throw UsageError("readout qubit out of range");
    }
    readout_ = qubit;
}

void CircuitTemplate::append_layer(Layer layer) {
    validate_layer(layer, n_qubits_);
    for (auto &[a, b] : layer.entangler) {
        if (a > b) {
            std::swap(a, b);
        }
    }
    sign_masks_.push_back(sim::cz_sign_mask(n_qubits_, layer.entangler));
    layers_.push_back(std::move(layer));
}

void CircuitTemplate::replace_layers(std::size_t first, std::span<const Layer> block) {
    if (first + block.size() > layers_.size()) {
        throw UsageError("layer range out of bounds");
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
        validate_layer(block[i], n_qubits_);
        if (block[i].entangler != layers_[first + i].entangler) {
            sign_masks_[first + i] = sim::cz_sign_mask(n_qubits_, block[i].entangler);
        }
        layers_[first + i] = block[i];
    }
}

CircuitTemplate CircuitTemplate::truncated(std::size_t depth) const {
    if (depth > layers_.size()) {
        throw UsageError("cannot truncate to more layers than the template holds");
    }
    CircuitTemplate out(n_qubits_, prefix_);
    out.readout_ = readout_;
    out.layers_.assign(layers_.begin(), layers_.begin() + static_cast<std::ptrdiff_t>(depth));
    out.sign_masks_.assign(sign_masks_.begin(),
                           sign_masks_.begin() + static_cast<std::ptrdiff_t>(depth));
    return out;
}

nlohmann::json CircuitTemplate::to_json() const {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto &layer : layers_) {
        std::string axes;
        for (const auto a : layer.axes) {
            axes.push_back(sim::axis_name(a));
        }
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto &[a, b] : layer.entangler) {
            pairs.push_back({a, b});
        }
        layers.push_back({{"axes", axes}, {"cz", pairs}});
    }
    return {{"n_qubits", n_qubits_},
            {"prefix", prefix_name(prefix_)},
            {"readout_qubit", readout_},
            {"layers", layers}};
}

CircuitTemplate CircuitTemplate::from_json(const nlohmann::json &doc) {
    try {
        CircuitTemplate out(doc.at("n_qubits").get<std::size_t>(),
                            prefix_from_name(doc.at("prefix").get<std::string>()));
        out.set_readout_qubit(doc.at("readout_qubit").get<std::size_t>());
        for (const auto &entry : doc.at("layers")) {
            Layer layer;
            for (const char c : entry.at("axes").get<std::string>()) {
                layer.axes.push_back(sim::axis_from_name(c));
            }
            for (const auto &pair : entry.at("cz")) {
                layer.entangler.emplace_back(pair.at(0).get<std::size_t>(),
                                             pair.at(1).get<std::size_t>());
            }
            out.append_layer(std::move(layer));
        }
        return out;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed template document: ") + e.what());
    } catch (const UsageError &e) {
        throw ParseError(std::string("invalid template document: ") + e.what());
    }
}

std::vector<CzPair> all_to_all_entangler(std::size_t n_qubits) {
    if (n_qubits < 2) {
        throw UsageError("all-to-all entangler needs at least 2 qubits");
    }
    std::vector<CzPair> pairs;
    pairs.reserve(n_qubits * (n_qubits - 1) / 2);
    for (std::size_t i = 0; i < n_qubits; ++i) {
        for (std::size_t j = i + 1; j < n_qubits; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

Layer random_layer(std::size_t n_qubits, Rng &rng) {
    Layer layer;
    layer.axes.reserve(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        layer.axes.push_back(static_cast<Axis>(rng.below(3)));
    }
    if (n_qubits >= 2) {
        layer.entangler = all_to_all_entangler(n_qubits);
    }
    return layer;
}

bool enforce_x_in_block(std::span<Layer> block, Rng &rng) {
    std::size_t slots = 0;
    for (const auto &layer : block) {
        slots += layer.axes.size();
        if (std::find(layer.axes.begin(), layer.axes.end(), Axis::X) != layer.axes.end()) {
            return false;
        }
    }
    if (slots == 0) {
        throw UsageError("cannot enforce an X rotation in an empty block");
    }
    auto pick = static_cast<std::size_t>(rng.below(slots));
    for (auto &layer : block) {
        if (pick < layer.axes.size()) {
            layer.axes[pick] = Axis::X;
            return true;
        }
        pick -= layer.axes.size();
    }
    return true;
}

Prefix data_layer(std::span<const double> features) {
    return {PrefixKind::DataLayer, {features.begin(), features.end()}};
}

Prefix hadamard_wall() { return {PrefixKind::HadamardWall, {}}; }

void apply_prefix(sim::StateVector &state, const Prefix &prefix) {
    switch (prefix.kind) {
    case PrefixKind::None:
        return;
    case PrefixKind::HadamardWall:
        for (std::size_t q = 0; q < state.n_qubits(); ++q) {
            sim::apply_hadamard(state, q);
        }
        return;
    case PrefixKind::DataLayer:
        if (prefix.features.size() != state.n_qubits()) {
            throw UsageError("data layer needs one feature per qubit, got " +
                             std::to_string(prefix.features.size()) + " for " +
                             std::to_string(state.n_qubits()) + " qubits");
        }
        // exp(-i d X) is a half-angle X rotation by 2d.
        for (std::size_t q = 0; q < state.n_qubits(); ++q) {
            sim::apply_rotation(state, q, Axis::X, 2.0 * prefix.features[q]);
        }
        return;
    }
}

CircuitTemplate grow(const CircuitTemplate &tmpl, std::size_t p, std::uint64_t seed) {
    if (p == 0) {
        throw UsageError("grow needs p >= 1");
    }
    CircuitTemplate out = tmpl;
    const std::size_t first = tmpl.depth();
    for (std::size_t k = first; k < first + p; ++k) {
        auto rng = Rng::keyed(seed, {kLayerStream, k});
        out.append_layer(random_layer(tmpl.n_qubits(), rng));
    }
    return out;
}

void enforce_x_in_range(CircuitTemplate &tmpl, std::size_t first, std::size_t count,
                        std::uint64_t seed) {
    if (first + count > tmpl.depth()) {
        throw UsageError("enforcement range out of bounds");
    }
    std::vector<Layer> block(tmpl.layers().begin() + static_cast<std::ptrdiff_t>(first),
                             tmpl.layers().begin() + static_cast<std::ptrdiff_t>(first + count));
    auto rng = Rng::keyed(seed, {kEnforceStream, first});
    if (enforce_x_in_block(block, rng)) {
        tmpl.replace_layers(first, block);
    }
}

CircuitTemplate random_template(std::size_t n_qubits, std::size_t depth, PrefixKind prefix,
                                std::uint64_t seed) {
    CircuitTemplate empty(n_qubits, prefix);
    return depth == 0 ? empty : grow(empty, depth, seed);
}

CircuitTemplate layerwise_template(std::size_t n_qubits, std::size_t start, std::size_t p,
                                   std::size_t total, std::uint64_t seed) {
    if (start == 0 || p == 0 || total < start || (total - start) % p != 0) {
        throw UsageError("layerwise template needs start >= 1, p >= 1 and total = start + k*p");
    }
    auto tmpl = grow(CircuitTemplate(n_qubits, PrefixKind::DataLayer), start, seed);
    enforce_x_in_range(tmpl, 0, start, seed);
    while (tmpl.depth() < total) {
        const std::size_t first = tmpl.depth();
        tmpl = grow(tmpl, p, seed);
        enforce_x_in_range(tmpl, first, p, seed);
    }
    return tmpl;
}

CircuitTemplate complete_depth_template(std::size_t n_qubits, std::size_t total,
                                        std::uint64_t seed) {
    auto tmpl = random_template(n_qubits, total, PrefixKind::DataLayer, seed);
    if (total > 0) {
        enforce_x_in_range(tmpl, 0, total, seed);
    }
    return tmpl;
}

} // namespace qlw::circuits
