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

#include "qlw/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "qlw/errors.hpp"

namespace qlw::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "n_qubits", "layers", "strategy", "s", "p", "q", "e_l", "r", "sweeps",
    "initial_always_active", "cdl_epochs", "eta", "b", "m", "n_runs", "seed",
    "template_seed", "data_seed", "mnist_dir", "output_dir", "per_class_train",
    "per_class_test", "classes", "pca_fit_all", "variance_scan", "sweep", "threads",
    "encoded_train", "encoded_test", "label", "comment"};

template <class T> T get(const json &doc, const std::string &key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(key, "has the wrong type");
    }
}

std::size_t get_count(const json &doc, const std::string &key, std::size_t fallback,
                      std::size_t minimum) {
    if (doc.contains(key) && !doc.at(key).is_number_integer()) {
        throw ConfigError(key, "must be an integer");
    }
    if (doc.contains(key) && doc.at(key).get<long long>() < static_cast<long long>(minimum)) {
        throw ConfigError(key, "must be at least " + std::to_string(minimum));
    }
    return get<std::size_t>(doc, key, fallback);
}

std::uint64_t get_shots(const json &doc, std::uint64_t fallback) {
    if (!doc.contains("m")) {
        return fallback;
    }
    const auto &m = doc.at("m");
    if (m.is_string() && m.get<std::string>() == "exact") {
        return 0;
    }
    if (!m.is_number_integer() || m.get<long long>() < 0) {
        throw ConfigError("m", "must be a non-negative shot count or \"exact\"");
    }
    return m.get<std::uint64_t>();
}

// Training fields shared by the base config and each sweep entry.
experiments::RunConfig parse_run(const json &doc, const experiments::RunConfig &base,
                                 const std::string &where) {
    experiments::RunConfig run = base;
    auto field = [&](const std::string &k) { return where.empty() ? k : where + "." + k; };
    try {
        if (doc.contains("strategy")) {
            run.strategy = experiments::strategy_from_name(get<std::string>(doc, "strategy", ""));
        }
    } catch (const UsageError &e) {
        throw ConfigError(field("strategy"), e.what());
    }
    try {
        run.n_qubits = get_count(doc, "n_qubits", run.n_qubits, 2);
        run.layerwise.total_layers = get_count(doc, "layers", run.layerwise.total_layers, 1);
        run.layerwise.start_layers = get_count(doc, "s", run.layerwise.start_layers, 1);
        run.layerwise.layers_per_step = get_count(doc, "p", run.layerwise.layers_per_step, 1);
        run.layerwise.freeze_window = get_count(doc, "q", run.layerwise.freeze_window, 1);
        run.layerwise.epochs_per_segment =
            get_count(doc, "e_l", run.layerwise.epochs_per_segment, 1);
        run.layerwise.sweeps = get_count(doc, "sweeps", run.layerwise.sweeps, 0);
        run.cdl_epochs = get_count(doc, "cdl_epochs", run.cdl_epochs, 1);
        run.batch_size = get_count(doc, "b", run.batch_size, 1);
        run.template_seed = get<std::uint64_t>(doc, "template_seed", run.template_seed);
    } catch (const ConfigError &e) {
        throw ConfigError(field(e.field()), e.message());
    }
    run.layerwise.phase_two_fraction = get<double>(doc, "r", run.layerwise.phase_two_fraction);
    run.layerwise.initial_always_active =
        get<bool>(doc, "initial_always_active", run.layerwise.initial_always_active);
    run.eta = get<double>(doc, "eta", run.eta);
    run.shots = get_shots(doc, run.shots);
    run.label = get<std::string>(doc, "label", where.empty() ? run.label : std::string{});

    if (run.n_qubits > 20) {
        throw ConfigError(field("n_qubits"), "must be at most 20");
    }
    if (!(run.eta > 0.0)) {
        throw ConfigError(field("eta"), "must be positive");
    }
    if (!(run.layerwise.phase_two_fraction > 0.0 && run.layerwise.phase_two_fraction <= 1.0)) {
        throw ConfigError(field("r"), "must lie in (0, 1]");
    }
    if (run.strategy == experiments::Strategy::Layerwise) {
        const auto &o = run.layerwise;
        if (o.freeze_window < o.layers_per_step) {
            throw ConfigError(field("q"), "must be >= p");
        }
        if (o.total_layers < o.start_layers || (o.total_layers - o.start_layers) % o.layers_per_step) {
            throw ConfigError(field("layers"), "must equal s + k*p for an integer k");
        }
    }
    return run;
}

std::vector<std::size_t> get_list(const json &doc, const std::string &key,
                                  std::vector<std::size_t> fallback, std::size_t minimum) {
    if (!doc.contains(key)) {
        return fallback;
    }
    std::vector<std::size_t> out;
    try {
        for (const auto &v : doc.at(key)) {
            if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
                throw ConfigError(key, "entries must be integers >= " + std::to_string(minimum));
            }
            out.push_back(v.get<std::size_t>());
        }
    } catch (const json::exception &) {
        throw ConfigError(key, "must be a list of integers");
    }
    if (out.empty()) {
        throw ConfigError(key, "must not be empty");
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(const json &document) {
    if (!document.is_object()) {
        throw ConfigError("<root>", "configuration must be a JSON object");
    }
    for (const auto &[key, value] : document.items()) {
        if (!kKnownKeys.contains(key)) {
            throw ConfigError(key, "unknown key");
        }
    }

    ExperimentConfig cfg;
    cfg.document = document;
    cfg.run = parse_run(document, experiments::RunConfig{}, "");

    cfg.n_runs = get_count(document, "n_runs", cfg.n_runs, 1);
    cfg.seed = get<std::uint64_t>(document, "seed", cfg.seed);
    cfg.threads = static_cast<int>(get_count(document, "threads", 0, 0));
    cfg.output_dir = get<std::string>(document, "output_dir", cfg.output_dir.string());
    cfg.encoded_train = get<std::string>(document, "encoded_train", "");
    cfg.encoded_test = get<std::string>(document, "encoded_test", "");
    if (cfg.encoded_train.empty() != cfg.encoded_test.empty()) {
        throw ConfigError(cfg.encoded_train.empty() ? "encoded_train" : "encoded_test",
                          "encoded_train and encoded_test must be given together");
    }

    if (document.contains("mnist_dir")) {
        cfg.mnist_dir = get<std::string>(document, "mnist_dir", "");
    } else if (const char *env = std::getenv(kMnistEnv); env != nullptr && *env != '\0') {
        cfg.mnist_dir = env;
    } else {
        cfg.mnist_dir = "data/mnist-5k";
    }

    cfg.encode.n_components = cfg.run.n_qubits;
    cfg.encode.per_class_train = get_count(document, "per_class_train", 50, 1);
    cfg.encode.per_class_test = get_count(document, "per_class_test", 50, 1);
    cfg.encode.seed = get<std::uint64_t>(document, "data_seed", 1);
    cfg.encode.fit_on_all_images = get<bool>(document, "pca_fit_all", false);
    if (document.contains("classes")) {
        const auto classes = get<std::vector<int>>(document, "classes", {});
        if (classes.size() != 2 || classes[0] == classes[1] || classes[0] < 0 || classes[0] > 9 ||
            classes[1] < 0 || classes[1] > 9) {
            throw ConfigError("classes", "must list two distinct digits");
        }
        cfg.encode.classes = {classes[0], classes[1]};
    }
    if (cfg.run.batch_size > 2 * cfg.encode.per_class_train) {
        throw ConfigError("b", "batch size exceeds the training set size");
    }

    if (document.contains("variance_scan")) {
        const auto &vs = document.at("variance_scan");
        if (!vs.is_object()) {
            throw ConfigError("variance_scan", "must be an object");
        }
        try {
            cfg.scan.qubits = get_list(vs, "qubits", cfg.scan.qubits, 2);
            cfg.scan.layers = get_list(vs, "layers", cfg.scan.layers, 1);
            cfg.scan.trials = get_count(vs, "trials", cfg.scan.trials, 2);
        } catch (const ConfigError &e) {
            throw ConfigError("variance_scan." + e.field(), e.message());
        }
        cfg.scan.all_slots = get<bool>(vs, "all_slots", false);
        for (const auto n : cfg.scan.qubits) {
            if (n > 20) {
                throw ConfigError("variance_scan.qubits", "entries must be at most 20");
            }
        }
    }

    if (document.contains("sweep")) {
        const auto &sw = document.at("sweep");
        if (sw.is_array()) {
            for (std::size_t i = 0; i < sw.size(); ++i) {
                cfg.sweep.push_back(parse_run(sw[i], cfg.run, "sweep[" + std::to_string(i) + "]"));
            }
        } else if (sw.is_object()) {
            // Cartesian grid: {"strategies": [...], "etas": [...]}, other keys shared.
            const auto strategies = sw.value("strategies", std::vector<std::string>{
                                                               experiments::strategy_name(cfg.run.strategy)});
            const auto etas = sw.value("etas", std::vector<double>{cfg.run.eta});
            for (const auto &s : strategies) {
                for (const double eta : etas) {
                    json entry = sw;
                    entry.erase("strategies");
                    entry.erase("etas");
                    entry["strategy"] = s;
                    entry["eta"] = eta;
                    cfg.sweep.push_back(parse_run(entry, cfg.run, "sweep"));
                }
            }
        } else {
            throw ConfigError("sweep", "must be a list of configurations or a grid object");
        }
    }
    return cfg;
}

void apply_override(json &document, const std::string &key, const std::string &value) {
    json parsed = json::parse(value, nullptr, false);
    document[key] = parsed.is_discarded() ? json(value) : parsed;
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open " + path.string());
    }
    json doc = json::parse(in, nullptr, false, true);
    if (doc.is_discarded()) {
        throw ConfigError("--config", path.string() + " is not valid JSON");
    }
    return doc;
}

} // namespace qlw::cli
