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
 * runs.csv: one row per recorded epoch.
 *
 *   run_id,strategy,epoch,segment,n_trainable,train_loss,test_error,
 *   cumulative_measurements,wall_seconds_estimate,forward_measurements,diverged,config
 *
 * `cumulative_measurements` counts gradient shots only (2 * n_p * m * b per iteration);
 * forward-pass shots are tracked separately. A diverged run ends with a row whose loss and
 * error are `nan`, and every row of that run carries diverged = 1. Reals are written with
 * 17 significant digits so a read-back reproduces the values exactly. Lines starting with
 * '#' are comments (the writer puts the config snapshot there).
 */

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qlw/training/trainer.hpp"

namespace qlw::training {

inline constexpr const char *kRunsCsvHeader =
    "run_id,strategy,epoch,segment,n_trainable,train_loss,test_error,"
    "cumulative_measurements,wall_seconds_estimate,forward_measurements,diverged,config";

/// Writes `# <comment>` (if non-empty), the header, then every row of every record.
void write_runs_csv(std::ostream &out, std::span<const RunRecord> records,
                    const std::string &comment = {});

/// Appends rows of `record` without a header.
void write_run_rows(std::ostream &out, const RunRecord &record);

/// Parses runs.csv; rows are grouped into records by run_id in first-seen order.
[[nodiscard]] std::vector<RunRecord> read_runs_csv(std::istream &in);

/// Formats a real with 17 significant digits (`nan` for NaN).
[[nodiscard]] std::string format_real(double value);

} // namespace qlw::training
