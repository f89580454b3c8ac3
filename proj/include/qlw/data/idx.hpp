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
 * IDX reader/writer (the MNIST container format), raw or gzip-compressed.
 *
 * Images: magic 0x00000803, count, rows, cols, then count*rows*cols bytes.
 * Labels: magic 0x00000801, count, then count bytes. All integers big-endian.
 */

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace qlw::data {

struct RawDataset {
    std::size_t rows = 28;
    std::size_t cols = 28;
    std::vector<std::uint8_t> pixels;  ///< count * rows * cols, row-major per image
    std::vector<std::uint8_t> labels;

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
    [[nodiscard]] std::size_t image_size() const noexcept { return rows * cols; }
    [[nodiscard]] std::span<const std::uint8_t> image(std::size_t i) const {
        return {pixels.data() + i * image_size(), image_size()};
    }
};

/// Reads an image file and a label file; either may be gzip-compressed. Throws ParseError
/// naming the file and byte offset on a bad magic number, truncation or count mismatch.
[[nodiscard]] RawDataset load_idx(const std::filesystem::path &images,
                                  const std::filesystem::path &labels);

/// Writes `data` as two IDX files (gzip-compressed when `compress`).
void write_idx(const RawDataset &data, const std::filesystem::path &images,
               const std::filesystem::path &labels, bool compress = false);

} // namespace qlw::data
