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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qlw/training/trainer.hpp"

namespace qlw::experiments {

inline constexpr double kSamplingRateHz = 10'000.0;
inline constexpr std::size_t kFinalWindow = 10;

/// Seconds of device time for `measurements` shots at `rate` shots per second.
[[nodiscard]] double runtime_estimate(std::uint64_t measurements, double rate = kSamplingRateHz);

/// Mean test error over the last 10 recorded epochs; NaN for a diverged or empty run.
[[nodiscard]] double final_test_error(const training::RunRecord &record);

/// Run finished without diverging and its final test error beats random guessing.
[[nodiscard]] bool is_success(const training::RunRecord &record);

/// Fraction of runs whose final accuracy (1 - final test error) reaches `threshold`.
/// Diverged runs count as failures. `threshold` must lie in [0.5, 1].
[[nodiscard]] double success_probability(std::span<const training::RunRecord> runs,
                                         double threshold);

/// 1 / probability, or +infinity when the probability is zero.
[[nodiscard]] double expected_repetitions(double probability);

struct CurvePoint {
    double threshold = 0.0;
    double success_probability = 0.0;
    double expected_repetitions = 0.0;
};

struct RuntimePoint {
    std::size_t epoch = 0;
    double mean_runtime_seconds = 0.0;
    double mean_test_error = 0.0;
    std::size_t runs = 0;  ///< successful runs contributing to this epoch
};

/// All runs of one configuration.
struct AggregateStats {
    std::string label;
    std::vector<training::RunRecord> runs;

    [[nodiscard]] std::vector<CurvePoint> success_curve(double step = 0.01) const;
    /// Mean test error and runtime per epoch over successful runs.
    [[nodiscard]] std::vector<RuntimePoint> runtime_curve() const;
};

/// Groups records by config label, preserving first-seen order.
[[nodiscard]] std::vector<AggregateStats> group_by_config(std::span<const training::RunRecord> runs);

inline constexpr const char *kCurvesCsvHeader = "config,threshold,success_prob,expected_reps";
inline constexpr const char *kRuntimeCsvHeader =
    "config,epoch,mean_runtime_seconds,mean_test_error,n_runs";

void write_curves_csv(std::ostream &out, std::span<const AggregateStats> stats,
                      const std::string &comment = {});
void write_runtime_csv(std::ostream &out, std::span<const AggregateStats> stats,
                       const std::string &comment = {});

} // namespace qlw::experiments
