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

#include "qlw/experiments/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "qlw/errors.hpp"
#include "qlw/training/record_io.hpp"

namespace qlw::experiments {
namespace {

// Accuracies are averages of multiples of 1/|test|; compare with a little slack.
constexpr double kThresholdSlack = 1e-12;

} // namespace

double runtime_estimate(std::uint64_t measurements, double rate) {
    if (!(rate > 0.0)) {
        throw UsageError("sampling rate must be positive");
    }
    return static_cast<double>(measurements) / rate;
}

double final_test_error(const training::RunRecord &record) {
    if (record.diverged || record.rows.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const std::size_t count = std::min(kFinalWindow, record.rows.size());
    double total = 0.0;
    for (std::size_t i = record.rows.size() - count; i < record.rows.size(); ++i) {
        total += record.rows[i].test_error;
    }
    return total / static_cast<double>(count);
}

bool is_success(const training::RunRecord &record) {
    const double e = final_test_error(record);
    return std::isfinite(e) && e < 0.5;
}

double success_probability(std::span<const training::RunRecord> runs, double threshold) {
    if (!(threshold >= 0.5 && threshold <= 1.0)) {
        throw UsageError("accuracy threshold must lie in [0.5, 1]");
    }
    if (runs.empty()) {
        return 0.0;
    }
    std::size_t hits = 0;
    for (const auto &r : runs) {
        const double e = final_test_error(r);
        if (std::isfinite(e) && 1.0 - e >= threshold - kThresholdSlack) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(runs.size());
}

double expected_repetitions(double probability) {
    return probability > 0.0 ? 1.0 / probability : std::numeric_limits<double>::infinity();
}

std::vector<CurvePoint> AggregateStats::success_curve(double step) const {
    std::vector<CurvePoint> out;
    const auto steps = static_cast<std::size_t>(std::llround(0.5 / step));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = 0.5 + static_cast<double>(i) * step;
        const double p = success_probability(runs, std::min(t, 1.0));
        out.push_back({t, p, expected_repetitions(p)});
    }
    return out;
}

std::vector<RuntimePoint> AggregateStats::runtime_curve() const {
    std::vector<RuntimePoint> out;
    for (const auto &r : runs) {
        if (!is_success(r)) {
            continue;
        }
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            if (out.size() <= i) {
                out.push_back({r.rows[i].epoch, 0.0, 0.0, 0});
            }
            out[i].mean_runtime_seconds += r.rows[i].wall_seconds_estimate;
            out[i].mean_test_error += r.rows[i].test_error;
            ++out[i].runs;
        }
    }
    for (auto &p : out) {
        p.mean_runtime_seconds /= static_cast<double>(p.runs);
        p.mean_test_error /= static_cast<double>(p.runs);
    }
    return out;
}

std::vector<AggregateStats> group_by_config(std::span<const training::RunRecord> runs) {
    std::vector<AggregateStats> out;
    std::map<std::string, std::size_t> index;
    for (const auto &r : runs) {
        auto [it, inserted] = index.try_emplace(r.config_label, out.size());
        if (inserted) {
            out.push_back({r.config_label, {}});
        }
        out[it->second].runs.push_back(r);
    }
    return out;
}

void write_curves_csv(std::ostream &out, std::span<const AggregateStats> stats,
                      const std::string &comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << kCurvesCsvHeader << '\n';
    for (const auto &s : stats) {
        for (const auto &p : s.success_curve()) {
            out << s.label << ',' << training::format_real(p.threshold) << ','
                << training::format_real(p.success_probability) << ','
                << (std::isinf(p.expected_repetitions)
                        ? std::string("inf")
                        : training::format_real(p.expected_repetitions))
                << '\n';
        }
    }
}

void write_runtime_csv(std::ostream &out, std::span<const AggregateStats> stats,
                       const std::string &comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << kRuntimeCsvHeader << '\n';
    for (const auto &s : stats) {
        for (const auto &p : s.runtime_curve()) {
            out << s.label << ',' << p.epoch << ',' << training::format_real(p.mean_runtime_seconds)
                << ',' << training::format_real(p.mean_test_error) << ',' << p.runs << '\n';
        }
    }
}

} // namespace qlw::experiments
