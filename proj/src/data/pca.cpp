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

#include "qlw/data/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlw/errors.hpp"

namespace qlw::data {

PcaModel pca_fit(const Eigen::MatrixXd &images, std::size_t k) {
    const auto n = images.rows();
    if (n < 2) {
        throw UsageError("PCA needs at least two samples");
    }
    if (k == 0) {
        throw UsageError("PCA needs k >= 1");
    }
    PcaModel model;
    model.mean = images.colwise().mean().transpose();
    const Eigen::MatrixXd centered = images.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(n - 1);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw UsageError("covariance eigendecomposition failed");
    }
    // Eigen returns ascending eigenvalues.
    const Eigen::VectorXd values = solver.eigenvalues().reverse();
    const double tol = std::max(values(0), 0.0) * 1e-10 * static_cast<double>(values.size());
    const auto rank = static_cast<std::size_t>((values.array() > tol).count());
    if (k > rank) {
        throw UsageError("requested " + std::to_string(k) + " components but covariance rank is " +
                         std::to_string(rank));
    }

    const auto d = cov.rows();
    const auto kk = static_cast<Eigen::Index>(k);
    model.components.resize(kk, d);
    model.eigenvalues = values.head(kk);
    for (Eigen::Index c = 0; c < kk; ++c) {
        Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - c);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0) {
            v = -v;
        }
        model.components.row(c) = v.transpose();
    }

    const Eigen::MatrixXd projected = centered * model.components.transpose();
    model.min.resize(k);
    model.max.resize(k);
    for (Eigen::Index c = 0; c < kk; ++c) {
        model.min[static_cast<std::size_t>(c)] = projected.col(c).minCoeff();
        model.max[static_cast<std::size_t>(c)] = projected.col(c).maxCoeff();
    }
    return model;
}

Eigen::VectorXd pca_project(const PcaModel &model, const Eigen::VectorXd &image) {
    if (image.size() != model.mean.size()) {
        throw UsageError("image size does not match the PCA model");
    }
    return model.components * (image - model.mean);
}

std::vector<double> encode(const PcaModel &model, const Eigen::VectorXd &image) {
    const Eigen::VectorXd coords = pca_project(model, image);
    const double top = 2.0 * std::numbers::pi * (1.0 - kScaleEpsilon);
    std::vector<double> out(model.n_components());
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double span = model.max[c] - model.min[c];
        const double unit =
            span > 0.0 ? (coords(static_cast<Eigen::Index>(c)) - model.min[c]) / span : 0.0;
        out[c] = std::clamp(unit, 0.0, 1.0) * top;
    }
    return out;
}

nlohmann::json PcaModel::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < components.rows(); ++r) {
        rows.push_back(std::vector<double>(components.row(r).begin(), components.row(r).end()));
    }
    return {{"mean", std::vector<double>(mean.begin(), mean.end())},
            {"components", rows},
            {"eigenvalues", std::vector<double>(eigenvalues.begin(), eigenvalues.end())},
            {"min", min},
            {"max", max},
            {"scale_epsilon", kScaleEpsilon}};
}

PcaModel PcaModel::from_json(const nlohmann::json &doc) {
    PcaModel m;
    const auto mean = doc.at("mean").get<std::vector<double>>();
    m.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    const auto &rows = doc.at("components");
    m.components.resize(static_cast<Eigen::Index>(rows.size()), m.mean.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto row = rows[r].get<std::vector<double>>();
        if (row.size() != mean.size()) {
            throw ParseError("PCA component length does not match the mean");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            m.components(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
        }
    }
    const auto ev = doc.at("eigenvalues").get<std::vector<double>>();
    m.eigenvalues = Eigen::Map<const Eigen::VectorXd>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    m.min = doc.at("min").get<std::vector<double>>();
    m.max = doc.at("max").get<std::vector<double>>();
    return m;
}

} // namespace qlw::data
