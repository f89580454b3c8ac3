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

#include "qlw/training/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qlw/errors.hpp"
#include "qlw/experiments/stats.hpp"
#include "qlw/sim/run.hpp"
#include "qlw/training/adam.hpp"
#include "qlw/training/loss.hpp"

namespace qlw::training {
namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646ULL; // "SHUFF"
constexpr std::uint64_t kShotStream = 0x53484f54ULL;      // "SHOT"
constexpr std::uint64_t kInitStream = 0x494e4954ULL;      // "INIT"

std::vector<double> exact_readouts(const circuits::CircuitTemplate &tmpl,
                                   std::span<const double> params,
                                   std::span<const LabeledSample> samples) {
    std::vector<double> out(samples.size());
    const sim::StateVector zero(tmpl.n_qubits());
    const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        out[idx] = rescale_readout(
            sim::circuit_expectation(tmpl, params, zero, samples[idx].features));
    }
    return out;
}

bool rows_equal(const EpochRow &a, const EpochRow &b) {
    auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
    return a.epoch == b.epoch && a.segment == b.segment && a.n_trainable == b.n_trainable &&
           same(a.train_loss, b.train_loss) && same(a.test_error, b.test_error) &&
           a.cumulative_measurements == b.cumulative_measurements &&
           same(a.wall_seconds_estimate, b.wall_seconds_estimate) &&
           a.forward_measurements == b.forward_measurements;
}

} // namespace

bool RunRecord::operator==(const RunRecord &other) const {
    if (run_id != other.run_id || strategy != other.strategy ||
        config_label != other.config_label || seed != other.seed ||
        diverged != other.diverged || rows.size() != other.rows.size()) {
        return false;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows_equal(rows[i], other.rows[i])) {
            return false;
        }
    }
    return true;
}

double dataset_loss(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                    std::span<const LabeledSample> samples) {
    if (samples.empty()) {
        throw UsageError("loss needs at least one sample");
    }
    const auto e = exact_readouts(tmpl, params, samples);
    double total = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        total += bce_loss(e[j], samples[j].label);
    }
    return total / static_cast<double>(samples.size());
}

double test_error(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                  std::span<const LabeledSample> samples) {
    if (samples.empty()) {
        throw UsageError("test set must not be empty");
    }
    const auto e = exact_readouts(tmpl, params, samples);
    std::size_t wrong = 0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const int predicted = e[j] > 0.5 ? 1 : 0;
        wrong += predicted != samples[j].label ? 1 : 0;
    }
    return static_cast<double>(wrong) / static_cast<double>(samples.size());
}

std::vector<double> initial_angles(std::size_t n, InitMode mode, std::uint64_t seed) {
    std::vector<double> out(n, 0.0);
    if (mode == InitMode::Uniform) {
        auto rng = Rng::keyed(seed, {kInitStream});
        for (auto &v : out) {
            v = 2.0 * std::numbers::pi * rng.uniform();
        }
    }
    return out;
}

RunRecord train(const TrainingSchedule &schedule, const circuits::CircuitTemplate &full_template,
                const Dataset &data, const TrainOptions &options) {
    if (schedule.segments.empty()) {
        throw UsageError("schedule has no segments");
    }
    if (full_template.depth() != schedule.final_depth()) {
        throw UsageError("template depth must equal the schedule's final depth");
    }
    if (data.train.empty() || data.test.empty()) {
        throw UsageError("training and test sets must not be empty");
    }
    if (options.batch_size == 0 || options.batch_size > data.train.size()) {
        throw UsageError("batch size must be in [1, training set size]");
    }

    RunRecord record;
    record.run_id = options.run_id;
    record.strategy = options.strategy;
    record.config_label = options.config_label;
    record.seed = options.seed;

    const std::size_t n = full_template.n_qubits();
    const std::size_t first_depth = schedule.segments.front().depth;
    circuits::CircuitTemplate tmpl = full_template.truncated(first_depth);
    ParameterStore params(initial_angles(tmpl.n_params(), schedule.init, options.seed));

    std::vector<std::size_t> order(data.train.size());
    std::vector<LabeledSample> batch;
    batch.reserve(options.batch_size);
    std::uint64_t measurements = 0;
    std::uint64_t forward = 0;
    std::uint64_t iteration = 0;
    std::size_t epoch = 0;

    for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
        const auto &segment = schedule.segments[si];
        if (segment.depth > tmpl.depth()) {
            params.extend_zero((segment.depth - tmpl.depth()) * n);
            tmpl = full_template.truncated(segment.depth);
        }
        const auto slots = segment.slots(n);
        params.set_trainable(slots);
        AdamState adam(slots.size(), options.eta);
        if (options.observer) {
            options.observer(si, false, params.values());
        }

        for (std::size_t e = 0; e < segment.epochs; ++e) {
            ++epoch;
            std::iota(order.begin(), order.end(), std::size_t{0});
            auto shuffle_rng = Rng::keyed(options.seed, {kShuffleStream, epoch});
            qlw::shuffle(std::span<std::size_t>(order), shuffle_rng);

            for (std::size_t start = 0; start < order.size() && !record.diverged;
                 start += options.batch_size) {
                batch.clear();
                const std::size_t stop = std::min(order.size(), start + options.batch_size);
                for (std::size_t i = start; i < stop; ++i) {
                    batch.push_back(data.train[order[i]]);
                }
                const auto est =
                    options.shots == 0
                        ? gradients::Estimator::exact()
                        : gradients::Estimator::sampled(
                              options.shots, derive_seed(options.seed, {kShotStream, iteration}));
                const auto step =
                    gradients::batch_loss_grad(tmpl, params.values(), slots, batch, est);
                ++iteration;
                measurements += step.gradient_shots;
                forward += step.forward_shots;
                if (!std::isfinite(step.loss) || !adam_step(adam, step.grad, params) ||
                    !params.all_finite()) {
                    record.diverged = true;
                }
            }

            EpochRow row;
            row.epoch = epoch;
            row.segment = si;
            row.n_trainable = slots.size();
            row.cumulative_measurements = measurements;
            row.forward_measurements = forward;
            row.wall_seconds_estimate = experiments::runtime_estimate(measurements);
            if (record.diverged) {
                row.train_loss = std::nan("");
                row.test_error = std::nan("");
                record.rows.push_back(row);
                return record;
            }
            row.train_loss = dataset_loss(tmpl, params.values(), data.train);
            row.test_error = test_error(tmpl, params.values(), data.test);
            record.rows.push_back(row);
            if (!std::isfinite(row.train_loss)) {
                record.diverged = true;
                return record;
            }
        }
        if (options.observer) {
            options.observer(si, true, params.values());
        }
    }
    return record;
}

} // namespace qlw::training
