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

#include "qlw/data/dataset.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qlw/errors.hpp"
#include "qlw/rng.hpp"
#include "qlw/training/record_io.hpp"

namespace qlw::data {
namespace {

constexpr std::uint64_t kSplitStream = 0x53504c4954ULL; // "SPLIT"

std::filesystem::path find_file(const std::filesystem::path &dir, const std::string &name) {
    for (const auto &candidate : {dir / name, dir / (name + ".gz")}) {
        if (std::filesystem::exists(candidate)) {
            return candidate;
        }
    }
    return {};
}

} // namespace

SplitIndices filter_and_split(const RawDataset &raw, std::array<int, 2> classes,
                              std::size_t per_class_train, std::size_t per_class_test,
                              std::uint64_t seed) {
    if (classes[0] == classes[1]) {
        throw UsageError("the two classes must differ");
    }
    SplitIndices out;
    for (const int digit : classes) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw.labels[i] == digit) {
                pool.push_back(i);
            }
        }
        if (pool.size() < per_class_train + per_class_test) {
            throw UsageError("digit " + std::to_string(digit) + " has " +
                             std::to_string(pool.size()) + " images, need " +
                             std::to_string(per_class_train + per_class_test));
        }
        auto rng = Rng::keyed(seed, {kSplitStream, static_cast<std::uint64_t>(digit)});
        qlw::shuffle(std::span<std::size_t>(pool), rng);
        out.train.insert(out.train.end(), pool.begin(),
                         pool.begin() + static_cast<std::ptrdiff_t>(per_class_train));
        out.test.insert(out.test.end(),
                        pool.begin() + static_cast<std::ptrdiff_t>(per_class_train),
                        pool.begin() + static_cast<std::ptrdiff_t>(per_class_train + per_class_test));
    }
    return out;
}

Eigen::MatrixXd image_matrix(const RawDataset &raw, std::span<const std::size_t> indices) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(indices.size()),
                      static_cast<Eigen::Index>(raw.image_size()));
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto img = raw.image(indices[r]);
        for (std::size_t c = 0; c < img.size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = img[c] / 255.0;
        }
    }
    return m;
}

EncodedDataset prepare_dataset(const RawDataset &raw, const EncodeOptions &options) {
    EncodedDataset out;
    out.indices = filter_and_split(raw, options.classes, options.per_class_train,
                                   options.per_class_test, options.seed);
    const Eigen::MatrixXd train_images = image_matrix(raw, out.indices.train);
    if (options.fit_on_all_images) {
        std::vector<std::size_t> all(raw.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        out.model = pca_fit(image_matrix(raw, all), options.n_components);
    } else {
        out.model = pca_fit(train_images, options.n_components);
    }

    auto encode_set = [&](std::span<const std::size_t> indices) {
        std::vector<LabeledSample> samples;
        samples.reserve(indices.size());
        const Eigen::MatrixXd images = image_matrix(raw, indices);
        for (Eigen::Index r = 0; r < images.rows(); ++r) {
            const int digit = raw.labels[indices[static_cast<std::size_t>(r)]];
            samples.push_back({encode(out.model, images.row(r).transpose()),
                               digit == options.classes[1] ? 1 : 0});
        }
        return samples;
    };
    out.train = encode_set(out.indices.train);
    out.test = encode_set(out.indices.test);
    return out;
}

RawDataset load_mnist_dir(const std::filesystem::path &dir) {
    const std::string images_name = "train-images-idx3-ubyte";
    const std::string labels_name = "train-labels-idx1-ubyte";
    const auto images = find_file(dir, images_name);
    const auto labels = find_file(dir, labels_name);
    if (images.empty() || labels.empty()) {
        throw ParseError("MNIST files not found in '" + dir.string() + "': expected " +
                         images_name + "[.gz] and " + labels_name +
                         "[.gz] (set QLW_MNIST_DIR or --mnist-dir)");
    }
    return load_idx(images, labels);
}

void write_encoded_csv(std::ostream &out, std::span<const LabeledSample> samples) {
    const std::size_t k = samples.empty() ? 0 : samples.front().features.size();
    out << "label";
    for (std::size_t c = 0; c < k; ++c) {
        out << ",f_" << c;
    }
    out << '\n';
    for (const auto &s : samples) {
        out << s.label;
        for (const double f : s.features) {
            out << ',' << training::format_real(f);
        }
        out << '\n';
    }
}

std::vector<LabeledSample> read_encoded_csv(std::istream &in) {
    std::vector<LabeledSample> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::istringstream fields(line);
        std::string field;
        LabeledSample s;
        std::getline(fields, field, ',');
        s.label = std::stoi(field);
        while (std::getline(fields, field, ',')) {
            s.features.push_back(std::stod(field));
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace qlw::data
