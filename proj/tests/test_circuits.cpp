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

#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qlw/circuits/template.hpp"
#include "qlw/errors.hpp"
#include "qlw/sim/run.hpp"

using namespace qlw;
using namespace qlw::circuits;
using qlw::sim::StateVector;

namespace {

bool has_x(std::span<const Layer> block) {
    for (const auto &l : block) {
        for (const auto a : l.axes) {
            if (a == Axis::X) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("all_to_all_entangler") {
    CHECK(all_to_all_entangler(2) == std::vector<CzPair>{{0, 1}});
    CHECK(all_to_all_entangler(4).size() == 6);
    CHECK(all_to_all_entangler(8).size() == 28);
    CHECK_THROWS_AS((void)all_to_all_entangler(1), UsageError);
}

TEST_CASE("random_layer") {
    Rng a(12);
    Rng b(12);
    const auto la = random_layer(6, a);
    CHECK(la == random_layer(6, b));
    CHECK(la.axes.size() == 6);
    CHECK(la.entangler == all_to_all_entangler(6));

    // Axis frequencies per qubit within 3 sigma of 1/3.
    const int draws = 10000;
    const std::size_t n = 4;
    std::vector<std::array<int, 3>> counts(n, {0, 0, 0});
    Rng rng(99);
    for (int i = 0; i < draws; ++i) {
        const auto l = random_layer(n, rng);
        for (std::size_t q = 0; q < n; ++q) {
            ++counts[q][static_cast<std::size_t>(l.axes[q])];
        }
    }
    const double sigma = std::sqrt(draws * (1.0 / 3) * (2.0 / 3));
    for (const auto &c : counts) {
        for (const int k : c) {
            CHECK(std::abs(k - draws / 3.0) < 3 * sigma);
        }
    }
}

TEST_CASE("enforce_x_in_block") {
    Rng rng(3);
    std::vector<Layer> block{random_layer(3, rng), random_layer(3, rng)};
    block[0].axes = {Axis::Y, Axis::X, Axis::Z};
    block[1].axes = {Axis::Z, Axis::Z, Axis::Y};
    const auto before = block;
    CHECK_FALSE(enforce_x_in_block(block, rng));
    CHECK(block == before);

    for (auto &l : block) l.axes.assign(3, Axis::Z);
    CHECK(enforce_x_in_block(block, rng));
    int xs = 0;
    for (const auto &l : block) xs += static_cast<int>(std::count(l.axes.begin(), l.axes.end(), Axis::X));
    CHECK(xs == 1);

    std::vector<Layer> empty;
    CHECK_THROWS_AS(enforce_x_in_block(empty, rng), UsageError);
}

TEST_CASE("data layer prefix") {
    StateVector s(3);
    const std::vector<double> zeros(3, 0.0);
    apply_prefix(s, data_layer(zeros));
    CHECK(s.amplitudes()[0] == sim::Amplitude(1.0));

    StateVector t(3);
    const std::vector<double> d{0.0, std::numbers::pi / 2, 0.0};
    apply_prefix(t, data_layer(d));
    CHECK(std::abs(t.amplitudes()[0b010] - sim::Amplitude(0, -1)) < 1e-15);
    CHECK(sim::expectation_z(t, 1) == doctest::Approx(-1.0));

    const std::vector<double> short_features{0.1, 0.2};
    CHECK_THROWS_AS(apply_prefix(t, data_layer(short_features)), UsageError);
}

TEST_CASE("grow") {
    const auto base = random_template(4, 3, PrefixKind::None, 8);
    const auto grown = grow(base, 2, 8);
    CHECK(grown.depth() == 5);
    CHECK(grown.n_params() == base.n_params() + 2 * 4);
    CHECK(grown.truncated(3) == base);
    CHECK(grow(grow(base, 1, 8), 1, 8) == grown);
    CHECK_THROWS_AS((void)grow(base, 0, 8), UsageError);

    // Slot contiguity: layer k owns [k*n, (k+1)*n) and zero angles keep |0..0>.
    const std::vector<double> zeros(grown.n_params(), 0.0);
    const auto out = sim::run_circuit(grown, zeros, StateVector(4));
    CHECK(out.amplitudes()[0] == sim::Amplitude(1.0));
}

TEST_CASE("layerwise and complete-depth templates") {
    const auto ll = layerwise_template(8, 1, 2, 21, 5);
    CHECK(ll.depth() == 21);
    CHECK(ll.prefix() == PrefixKind::DataLayer);
    CHECK(ll.readout_qubit() == 7);
    CHECK(has_x(ll.layers().subspan(0, 1)));
    for (std::size_t first = 1; first < 21; first += 2) {
        CHECK(has_x(ll.layers().subspan(first, 2)));
    }
    CHECK_THROWS_AS((void)layerwise_template(8, 1, 2, 20, 5), UsageError);

    const auto cdl = complete_depth_template(8, 21, 5);
    CHECK(cdl.depth() == 21);
    CHECK(has_x(cdl.layers()));
}

TEST_CASE("template json round trip") {
    auto tmpl = random_template(5, 4, PrefixKind::HadamardWall, 77);
    tmpl.set_readout_qubit(2);
    const auto doc = tmpl.to_json();
    CHECK(CircuitTemplate::from_json(doc) == tmpl);
    CHECK(doc.at("layers").size() == 4);
    CHECK_THROWS_AS(tmpl.set_readout_qubit(5), UsageError);
}
