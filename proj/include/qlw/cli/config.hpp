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
 * Experiment configuration: one JSON document per invocation.
 *
 * Every key is optional; missing keys take the defaults below. Validation runs before any
 * compute and reports the offending key through ConfigError.
 */

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlw/data/dataset.hpp"
#include "qlw/experiments/multi_run.hpp"

namespace qlw::cli {

struct VarianceScanSettings {
    std::vector<std::size_t> qubits{2, 4, 6, 8, 10, 12};
    std::vector<std::size_t> layers{1, 2, 5, 10, 20, 50, 100, 150};
    std::size_t trials = 1000;
    bool all_slots = false;
};

struct ExperimentConfig {
    nlohmann::json document;              ///< effective document after overrides
    experiments::RunConfig run;           ///< base training configuration
    std::vector<experiments::RunConfig> sweep;  ///< configurations for the sweep command
    data::EncodeOptions encode;
    VarianceScanSettings scan;
    std::size_t n_runs = 20;
    std::uint64_t seed = 1;
    std::filesystem::path mnist_dir;
    std::filesystem::path output_dir = "out";
    std::filesystem::path encoded_train;  ///< optional pre-encoded CSVs used instead of MNIST
    std::filesystem::path encoded_test;
    int threads = 0;                      ///< 0 = all available
};

/// Name of the environment variable giving the default MNIST directory.
inline constexpr const char *kMnistEnv = "QLW_MNIST_DIR";

[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json &document);

/// Sets top-level `key` from a command-line string: parsed as JSON when possible,
/// otherwise stored as a string.
void apply_override(nlohmann::json &document, const std::string &key, const std::string &value);

[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path &path);

} // namespace qlw::cli
