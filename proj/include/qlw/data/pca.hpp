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
 * Principal component analysis of flattened images and the angle encoding built on it.
 *
 * Components are the leading eigenvectors of the sample covariance of the fitting
 * images, sign-normalized so each component's largest-magnitude entry is positive.
 * Encoding maps each projected coordinate affinely from the fitted [min, max] to
 * [0, 2*pi*(1 - kScaleEpsilon)], clipping values outside the fitted range.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace qlw::data {

inline constexpr double kScaleEpsilon = 1e-6;

struct PcaModel {
    Eigen::VectorXd mean;           ///< per-pixel mean of the fitting images
    Eigen::MatrixXd components;     ///< k x d, orthonormal rows, descending variance
    Eigen::VectorXd eigenvalues;    ///< k leading covariance eigenvalues
    std::vector<double> min;        ///< per-component minimum over the fitting images
    std::vector<double> max;

    [[nodiscard]] std::size_t n_components() const noexcept {
        return static_cast<std::size_t>(components.rows());
    }

    [[nodiscard]] nlohmann::json to_json() const;
    static PcaModel from_json(const nlohmann::json &doc);
};

/// Rows of `images` are samples. Throws UsageError if k exceeds the covariance rank.
[[nodiscard]] PcaModel pca_fit(const Eigen::MatrixXd &images, std::size_t k);

/// Projected coordinates (k values) of one image.
[[nodiscard]] Eigen::VectorXd pca_project(const PcaModel &model, const Eigen::VectorXd &image);

/// Feature vector in [0, 2*pi) for one image.
[[nodiscard]] std::vector<double> encode(const PcaModel &model, const Eigen::VectorXd &image);

} // namespace qlw::data
