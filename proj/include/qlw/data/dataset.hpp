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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qlw/data/idx.hpp"
#include "qlw/data/pca.hpp"
#include "qlw/gradients/gradients.hpp"

namespace qlw::data {

using gradients::LabeledSample;

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Picks `per_class_train` + `per_class_test` images of each digit in `classes` by a seeded
/// shuffle; the two sets are disjoint. Raw indices are returned, class by class.
[[nodiscard]] SplitIndices filter_and_split(const RawDataset &raw, std::array<int, 2> classes,
                                            std::size_t per_class_train,
                                            std::size_t per_class_test, std::uint64_t seed);

/// Images at `indices` as rows of a matrix, pixels scaled to [0, 1].
[[nodiscard]] Eigen::MatrixXd image_matrix(const RawDataset &raw,
                                           std::span<const std::size_t> indices);

struct EncodeOptions {
    std::array<int, 2> classes{6, 9};  ///< digit mapped to label 0, digit mapped to label 1
    std::size_t per_class_train = 50;
    std::size_t per_class_test = 50;
    std::size_t n_components = 8;
    std::uint64_t seed = 0;
    bool fit_on_all_images = false;    ///< fit PCA on every image in the file, not the train split
};

struct EncodedDataset {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
    PcaModel model;
    SplitIndices indices;
};

[[nodiscard]] EncodedDataset prepare_dataset(const RawDataset &raw, const EncodeOptions &options);

/// Loads `train-images-idx3-ubyte[.gz]` and `train-labels-idx1-ubyte[.gz]` from `dir`.
/// Throws ParseError listing the expected filenames when they are missing.
[[nodiscard]] RawDataset load_mnist_dir(const std::filesystem::path &dir);

/// CSV rows `label,f_0,...,f_{k-1}` with a header line.
void write_encoded_csv(std::ostream &out, std::span<const LabeledSample> samples);
[[nodiscard]] std::vector<LabeledSample> read_encoded_csv(std::istream &in);

} // namespace qlw::data
