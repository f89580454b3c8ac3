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

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "qlw/circuits/template.hpp"
#include "qlw/errors.hpp"
#include "qlw/rng.hpp"
#include "qlw/sim/run.hpp"
#include "qlw/training/adam.hpp"
#include "qlw/training/loss.hpp"
#include "qlw/training/params.hpp"
#include "qlw/training/record_io.hpp"
#include "qlw/training/schedule.hpp"
#include "qlw/training/trainer.hpp"

using namespace qlw;
using namespace qlw::training;
using std::numbers::pi;

namespace {

Dataset toy_dataset(std::size_t n_qubits, std::size_t per_split, std::uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    for (auto *split : {&d.train, &d.test}) {
        for (std::size_t i = 0; i < per_split; ++i) {
            LabeledSample s;
            s.label = static_cast<int>(i % 2);
            s.features.resize(n_qubits);
            for (auto &f : s.features) {
                // Class 1 samples sit near pi/2 on every qubit, class 0 near 0.
                f = std::fmod(s.label * pi / 2 + 0.4 * (rng.uniform() - 0.5) + 2 * pi, 2 * pi);
            }
            split->push_back(s);
        }
    }
    return d;
}

} // namespace

TEST_CASE("cross entropy examples") {
    CHECK(bce_loss(0.5, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(bce_loss(0.5, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const double at_one = bce_loss(1.0, 1);
    CHECK(at_one > 0.0);
    CHECK(at_one == doctest::Approx(1e-15).epsilon(1e-3));
    CHECK(std::isfinite(bce_loss(1.0, 0)));
    CHECK(std::isfinite(bce_grad(0.0, 1)));
    CHECK(clip_probability(-0.5) == kClipLow);
    CHECK(clip_probability(2.0) == kClipHigh);
    CHECK(rescale_readout(-1.0) == 0.0);
}

TEST_CASE("adam examples") {
    for (const double g : {3.0, -0.02, 1e-5}) {
        ParameterStore p(std::vector<double>{1.0});
        const std::vector<std::size_t> slot{0};
        p.set_trainable(slot);
        AdamState s(1, 0.01);
        const std::vector<double> grad{g};
        CHECK(adam_step(s, grad, p));
        const double expected = 1.0 - 0.01 * (g > 0 ? 1 : -1);
        CHECK(std::abs(p.values()[0] - expected) < 1e-5);
    }

    ParameterStore p(std::vector<double>{0.5, 0.7});
    const std::vector<std::size_t> slot{1};
    p.set_trainable(slot);
    AdamState s(1, 0.01);
    const std::vector<double> zero{0.0};
    CHECK(adam_step(s, zero, p));
    CHECK(p.values()[0] == 0.5);
    CHECK(p.values()[1] == 0.7);

    const std::vector<double> g{2.0};
    CHECK(adam_step(s, g, p));
    CHECK(p.values()[0] == 0.5);  // frozen
    CHECK(p.values()[1] != 0.7);

    const std::vector<double> bad{std::numeric_limits<double>::quiet_NaN()};
    CHECK_FALSE(adam_step(s, bad, p));
}

TEST_CASE("parameter store") {
    ParameterStore p(3);
    p.extend_zero(2);
    CHECK(p.size() == 5);
    const std::vector<std::size_t> slots{1, 4};
    p.set_trainable(slots);
    CHECK(p.trainable_slots() == slots);
    CHECK_FALSE(p.trainable(0));
    const std::vector<std::size_t> bad{5};
    CHECK_THROWS_AS(p.set_trainable(bad), UsageError);
}

TEST_CASE("layerwise schedule for the paper configuration") {
    const auto sched = ll_schedule(LayerwiseOptions{});
    std::size_t phase_one = 0;
    std::vector<std::size_t> phase_two_sizes;
    for (const auto &seg : sched.segments) {
        CHECK(seg.epochs == 10);
        if (seg.phase == Phase::One) {
            ++phase_one;
            if (phase_one > 1) CHECK(seg.layers.size() == 3);
        } else {
            phase_two_sizes.push_back(seg.layers.size());
        }
    }
    CHECK(phase_one == 11);
    CHECK(phase_two_sizes == std::vector<std::size_t>{10, 11, 10, 11});
    CHECK(sched.final_depth() == 21);
    CHECK(sched.segments[1].layers == std::vector<std::size_t>{0, 1, 2});
    CHECK(sched.segments[10].layers == std::vector<std::size_t>{0, 19, 20});

    LayerwiseOptions tail;
    tail.total_layers = 9;
    tail.start_layers = 1;
    tail.layers_per_step = 8;
    tail.freeze_window = 9;
    tail.sweeps = 0;
    const auto t = ll_schedule(tail);
    REQUIRE(t.segments.size() == 2);
    CHECK(t.segments[1].layers.size() == 9);

    LayerwiseOptions bad;
    bad.total_layers = 20;
    CHECK_THROWS_AS((void)ll_schedule(bad), UsageError);
}

TEST_CASE("complete-depth schedule") {
    const auto s = cdl_schedule(21, 50, InitMode::Zero);
    REQUIRE(s.segments.size() == 1);
    CHECK(s.segments[0].layers.size() == 21);
    CHECK(s.segments[0].epochs == 50);

    const auto tmpl = circuits::random_template(4, 3, circuits::PrefixKind::None, 2);
    const auto zeros = initial_angles(tmpl.n_params(), InitMode::Zero, 1);
    const auto out = sim::run_circuit(tmpl, zeros, sim::StateVector(4));
    CHECK(out.amplitudes()[0] == sim::Amplitude(1.0));
    const auto uniform = initial_angles(100, InitMode::Uniform, 1);
    for (const double a : uniform) {
        CHECK(a >= 0.0);
        CHECK(a < 2 * pi);
    }
}

TEST_CASE("test error examples") {
    // No layers and no prefix: E = 1 on every sample, i.e. a constant class-1 predictor.
    circuits::CircuitTemplate none(2);
    std::vector<LabeledSample> balanced{{{0, 0}, 0}, {{0, 0}, 1}, {{0, 0}, 0}, {{0, 0}, 1}};
    CHECK(test_error(none, {}, balanced) == 0.5);

    // H on the readout gives E = 0.5 exactly: ties go to class 0.
    circuits::CircuitTemplate wall(1, circuits::PrefixKind::HadamardWall);
    std::vector<LabeledSample> ones{{{0}, 1}, {{0}, 1}};
    CHECK(test_error(wall, {}, ones) == 1.0);

    // Data layer with d = pi/2 flips the readout: separates d = 0 (class 1) and pi/2 (class 0).
    circuits::CircuitTemplate data(1, circuits::PrefixKind::DataLayer);
    std::vector<LabeledSample> sep{{{0.0}, 1}, {{pi / 2}, 0}};
    CHECK(test_error(data, {}, sep) == 0.0);
    std::vector<LabeledSample> empty;
    CHECK_THROWS_AS((void)test_error(data, {}, empty), UsageError);
}

TEST_CASE("training run: iterations, ledger, determinism, frozen slots") {
    const auto data = toy_dataset(3, 20, 4);
    LayerwiseOptions o;
    o.total_layers = 5;
    o.epochs_per_segment = 2;
    o.sweeps = 1;
    const auto sched = ll_schedule(o);
    const auto tmpl = circuits::layerwise_template(3, 1, 2, 5, 7);
    TrainOptions opt;
    opt.shots = 10;
    opt.batch_size = 5;
    opt.seed = 3;
    const auto rec = train(sched, tmpl, data, opt);
    CHECK_FALSE(rec.diverged);
    REQUIRE(rec.rows.size() == sched.total_epochs());

    // 20 samples / b = 5 gives 4 iterations per epoch.
    std::uint64_t expected = 0;
    std::size_t row = 0;
    for (const auto &seg : sched.segments) {
        const auto n_p = seg.slots(3).size();
        for (std::size_t e = 0; e < seg.epochs; ++e, ++row) {
            expected += 4 * 2 * n_p * 10 * 5;
            CHECK(rec.rows[row].cumulative_measurements == expected);
            CHECK(rec.rows[row].wall_seconds_estimate == static_cast<double>(expected) / 1e4);
            CHECK(rec.rows[row].n_trainable == n_p);
            CHECK(rec.rows[row].forward_measurements == (row + 1) * 4 * 10 * 5);
        }
    }
    CHECK(train(sched, tmpl, data, opt) == rec);
}

TEST_CASE("exact training lowers the loss") {
    const auto data = toy_dataset(2, 20, 9);
    const auto sched = cdl_schedule(3, 30, InitMode::Uniform);
    const auto tmpl = circuits::complete_depth_template(2, 3, 5);
    TrainOptions opt;
    opt.shots = 0;
    opt.batch_size = 20;
    opt.eta = 0.05;
    opt.strategy = "cdl-zero";
    const auto rec = train(sched, tmpl, data, opt);
    CHECK(rec.rows.back().train_loss < rec.rows.front().train_loss);
    // 1 iteration per epoch, m counted as 1 in exact mode.
    CHECK(rec.rows.back().cumulative_measurements == 30 * 2 * 6 * 20);
}

TEST_CASE("divergence is flagged") {
    const auto data = toy_dataset(2, 10, 1);
    const auto sched = cdl_schedule(2, 3, InitMode::Zero);
    const auto tmpl = circuits::complete_depth_template(2, 2, 5);
    TrainOptions opt;
    opt.batch_size = 10;
    opt.eta = std::numeric_limits<double>::infinity();
    const auto rec = train(sched, tmpl, data, opt);
    CHECK(rec.diverged);
    CHECK(std::isnan(rec.rows.back().train_loss));
}

TEST_CASE("runs.csv round trip") {
    const auto data = toy_dataset(2, 10, 2);
    const auto sched = cdl_schedule(2, 3, InitMode::Uniform);
    const auto tmpl = circuits::complete_depth_template(2, 2, 5);
    TrainOptions opt;
    opt.shots = 5;
    opt.batch_size = 5;
    opt.run_id = "abc";
    opt.config_label = "cdl-random_eta0.01";
    auto rec = train(sched, tmpl, data, opt);
    std::vector<RunRecord> records{rec};
    opt.eta = std::numeric_limits<double>::infinity();
    opt.run_id = "div";
    records.push_back(train(sched, tmpl, data, opt));
    std::stringstream ss;
    write_runs_csv(ss, records, "config={}");
    const auto back = read_runs_csv(ss);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].run_id == records[i].run_id);
        CHECK(back[i].diverged == records[i].diverged);
        CHECK(back[i].config_label == records[i].config_label);
        REQUIRE(back[i].rows.size() == records[i].rows.size());
        for (std::size_t r = 0; r < back[i].rows.size(); ++r) {
            const auto &a = back[i].rows[r];
            const auto &b = records[i].rows[r];
            CHECK(a.cumulative_measurements == b.cumulative_measurements);
            CHECK((a.train_loss == b.train_loss || (std::isnan(a.train_loss) && std::isnan(b.train_loss))));
            CHECK((a.test_error == b.test_error || (std::isnan(a.test_error) && std::isnan(b.test_error))));
        }
    }
    std::stringstream bad("run_id,strategy\nx,y\n");
    CHECK_THROWS_AS((void)read_runs_csv(bad), ParseError);
}
