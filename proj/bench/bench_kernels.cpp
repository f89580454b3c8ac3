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

// Parallel kernels against the serial reference, and the fast shifted-expectation engine
// against the naive two-run gradient.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qlw/circuits/template.hpp"
#include "qlw/gradients/gradients.hpp"
#include "qlw/rng.hpp"
#include "qlw/sim/kernels.hpp"
#include "qlw/sim/state.hpp"

using namespace qlw;

namespace {

sim::StateVector plus_state(std::size_t n) {
    sim::StateVector s(n);
    for (std::size_t q = 0; q < n; ++q) sim::apply_hadamard(s, q);
    return s;
}

void BM_RotationParallel(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = plus_state(n);
    std::size_t q = 0;
    for (auto _ : state) {
        sim::apply_rotation(s, q, sim::Axis::Y, 0.3);
        q = (q + 1) % n;
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.dim()));
}

void BM_RotationReference(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = plus_state(n);
    std::size_t q = 0;
    for (auto _ : state) {
        sim::reference::rotation(s, q, sim::Axis::Y, 0.3);
        q = (q + 1) % n;
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.dim()));
}

void BM_EntanglerFusedSigns(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = plus_state(n);
    const auto pairs = circuits::all_to_all_entangler(n);
    const auto signs = sim::cz_sign_mask(n, pairs);
    for (auto _ : state) {
        sim::apply_signs(s, signs);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}

void BM_EntanglerReference(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = plus_state(n);
    const auto pairs = circuits::all_to_all_entangler(n);
    for (auto _ : state) {
        for (const auto &[a, b] : pairs) sim::reference::cz(s, a, b);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}

struct GradientCase {
    circuits::CircuitTemplate tmpl;
    std::vector<double> params;
    std::vector<std::size_t> slots;
    std::vector<gradients::LabeledSample> batch;
};

GradientCase gradient_case(std::size_t depth) {
    GradientCase c{circuits::complete_depth_template(8, depth, 1), {}, {}, {}};
    Rng rng(2);
    c.params.resize(c.tmpl.n_params());
    for (auto &p : c.params) p = 2 * std::numbers::pi * rng.uniform();
    for (std::size_t i = 0; i < c.tmpl.n_params(); ++i) c.slots.push_back(i);
    for (int i = 0; i < 20; ++i) {
        gradients::LabeledSample s{std::vector<double>(8), i % 2};
        for (auto &f : s.features) f = 6 * rng.uniform();
        c.batch.push_back(s);
    }
    return c;
}

void BM_BatchGradientFast(benchmark::State &state) {
    const auto c = gradient_case(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gradients::batch_loss_grad(c.tmpl, c.params, c.slots, c.batch,
                                                            gradients::Estimator::sampled(10, 1)));
    }
}

void BM_BatchGradientReference(benchmark::State &state) {
    const auto c = gradient_case(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gradients::reference::batch_loss_grad(
            c.tmpl, c.params, c.slots, c.batch, gradients::Estimator::sampled(10, 1)));
    }
}

} // namespace

BENCHMARK(BM_RotationParallel)->Arg(8)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(BM_RotationReference)->Arg(8)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(BM_EntanglerFusedSigns)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(BM_EntanglerReference)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(BM_BatchGradientFast)->Arg(3)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchGradientReference)->Arg(3)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
