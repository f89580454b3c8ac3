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

#include <filesystem>
#include <iosfwd>

#include "qlw/cli/config.hpp"
#include "qlw/training/trainer.hpp"

namespace qlw::cli {

/// Encoded train/test sets for `cfg`: read from the encoded CSVs when given, otherwise
/// built from the MNIST files.
[[nodiscard]] training::Dataset load_dataset(const ExperimentConfig &cfg);

/// Writes variance_scan.csv.
void run_variance_scan(const ExperimentConfig &cfg, std::ostream &log);

/// Runs the base configuration `n_runs` times; writes runs.csv and summary.json.
void run_train(const ExperimentConfig &cfg, std::ostream &log);

/// Runs every sweep configuration `n_runs` times. Finished runs are kept under
/// runs/<run_id>.csv and reused on restart. Writes runs.csv, curves.csv, runtime_curve.csv.
void run_sweep(const ExperimentConfig &cfg, std::ostream &log);

/// Writes encoded_train.csv, encoded_test.csv and pca_model.json.
void run_encode(const ExperimentConfig &cfg, std::ostream &log);

/// Recomputes curves.csv and runtime_curve.csv from an existing runs.csv.
void run_report(const std::filesystem::path &runs_csv, const std::filesystem::path &output_dir,
                std::ostream &log);

} // namespace qlw::cli
