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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "qlw/cli/commands.hpp"
#include "qlw/cli/config.hpp"
#include "qlw/errors.hpp"
#include "qlw/training/record_io.hpp"

using namespace qlw;
using namespace qlw::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / ("qlw_test_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string bad_field(const json &doc) {
    try {
        (void)parse_config(doc);
    } catch (const ConfigError &e) {
        return e.field();
    }
    return {};
}

json small_train(const fs::path &out) {
    return {{"n_qubits", 8},   {"layers", 3},        {"e_l", 1},          {"sweeps", 1},
            {"b", 50},         {"m", 5},             {"n_runs", 2},       {"seed", 4},
            {"output_dir", out.string()}, {"mnist_dir", (fs::path(QLW_SOURCE_DIR) / "data/mnist-5k").string()}};
}

} // namespace

TEST_CASE("config validation names the field") {
    CHECK(bad_field({{"n_qubits", 1}}) == "n_qubits");
    CHECK(bad_field({{"variance_scan", {{"qubits", {1, 2}}}}}) == "variance_scan.qubits");
    CHECK(bad_field({{"strategy", "sgd"}}) == "strategy");
    CHECK(bad_field({{"eta", -1.0}}) == "eta");
    CHECK(bad_field({{"m", "lots"}}) == "m");
    CHECK(bad_field({{"layers", 20}}) == "layers");
    CHECK(bad_field({{"q", 1}}) == "q");
    CHECK(bad_field({{"bogus", 1}}) == "bogus");
    CHECK(bad_field({{"sweep", json::array({{{"eta", 0.0}}})}}) == "sweep[0].eta");
    CHECK(bad_field({{"classes", {6, 6}}}) == "classes");

    const auto cfg = parse_config({{"m", "exact"}, {"strategy", "cdl-zero"}});
    CHECK(cfg.run.shots == 0);
    CHECK(cfg.run.strategy == experiments::Strategy::CdlZero);
}

TEST_CASE("sweep grid expands to every combination") {
    const auto cfg = parse_config(
        {{"sweep", {{"strategies", {"ll", "cdl-zero"}}, {"etas", {0.01, 0.005, 0.001}}}}});
    CHECK(cfg.sweep.size() == 6);
    std::set<std::string> labels;
    for (const auto &c : cfg.sweep) labels.insert(c.effective_label());
    CHECK(labels.size() == 6);
}

TEST_CASE("overrides parse json values") {
    json doc = json::object();
    apply_override(doc, "eta", "0.02");
    apply_override(doc, "strategy", "cdl-zero");
    apply_override(doc, "m", "\"exact\"");
    CHECK(doc["eta"] == 0.02);
    CHECK(doc["strategy"] == "cdl-zero");
    CHECK(parse_config(doc).run.shots == 0);
}

TEST_CASE("mnist directory defaults to the environment") {
    ::setenv(kMnistEnv, "/somewhere/mnist", 1);
    CHECK(parse_config(json::object()).mnist_dir == "/somewhere/mnist");
    CHECK(parse_config({{"mnist_dir", "/x"}}).mnist_dir == "/x");
    ::unsetenv(kMnistEnv);
}

TEST_CASE("variance-scan command creates the output directory") {
    const auto out = scratch("scan") / "nested";
    const auto cfg = parse_config({{"output_dir", out.string()},
                                   {"variance_scan", {{"qubits", {2, 3}}, {"layers", {1, 2}}, {"trials", 20}}}});
    std::stringstream log;
    run_variance_scan(cfg, log);
    const auto text = slurp(out / "variance_scan.csv");
    CHECK(text.rfind("# config=", 0) == 0);
    CHECK(text.find("n_qubits,n_layers,variance,stderr") != std::string::npos);
}

TEST_CASE("encode command") {
    const auto out = scratch("encode");
    auto doc = small_train(out);
    const auto cfg = parse_config(doc);
    std::stringstream log;
    run_encode(cfg, log);
    std::ifstream train(out / "encoded_train.csv");
    std::string line;
    std::size_t rows = 0;
    std::getline(train, line);
    CHECK(line == "label,f_0,f_1,f_2,f_3,f_4,f_5,f_6,f_7");
    while (std::getline(train, line)) ++rows;
    CHECK(rows == 100);
    CHECK(json::parse(slurp(out / "pca_model.json")).contains("config"));

    doc["mnist_dir"] = (out / "nothing").string();
    try {
        run_encode(parse_config(doc), log);
        FAIL("expected an error");
    } catch (const ParseError &e) {
        CHECK(std::string(e.what()).find("train-labels-idx1-ubyte") != std::string::npos);
    }
}

TEST_CASE("train is reproducible and sweep resumes") {
    const auto out1 = scratch("train1");
    const auto out2 = scratch("train2");
    std::stringstream log;
    run_train(parse_config(small_train(out1)), log);
    auto doc2 = small_train(out2);
    run_train(parse_config(doc2), log);
    const auto a = slurp(out1 / "runs.csv");
    const auto b = slurp(out2 / "runs.csv");
    // Only the config comment (output_dir) differs.
    CHECK(a.substr(a.find('\n')) == b.substr(b.find('\n')));
    CHECK(json::parse(slurp(out1 / "summary.json"))["runs"].size() == 2);

    const auto out3 = scratch("sweep");
    auto doc3 = small_train(out3);
    doc3["sweep"] = {{"strategies", {"ll", "cdl-zero"}}, {"etas", {0.01}}};
    doc3["cdl_epochs"] = 2;
    run_sweep(parse_config(doc3), log);
    std::size_t files = 0;
    for (const auto &e : fs::directory_iterator(out3 / "runs")) files += e.path().extension() == ".csv";
    CHECK(files == 4);

    // Edit one stored run: a resumed sweep must reuse it rather than recompute.
    const auto victim = fs::directory_iterator(out3 / "runs")->path();
    std::vector<training::RunRecord> stored;
    {
        std::ifstream in(victim);
        stored = training::read_runs_csv(in);
    }
    REQUIRE(stored.size() == 1);
    stored[0].rows.back().test_error = 0.125;
    {
        std::ofstream out(victim);
        training::write_runs_csv(out, stored);
    }
    run_sweep(parse_config(doc3), log);
    std::ifstream merged(out3 / "runs.csv");
    bool found = false;
    for (const auto &r : training::read_runs_csv(merged)) {
        if (r.run_id == stored[0].run_id) {
            found = true;
            CHECK(r.rows.back().test_error == 0.125);
        }
    }
    CHECK(found);
    CHECK(fs::exists(out3 / "curves.csv"));
    CHECK(fs::exists(out3 / "runtime_curve.csv"));

    run_report(out3 / "runs.csv", out3 / "report", log);
    const auto curves = slurp(out3 / "curves.csv");
    const auto recomputed = slurp(out3 / "report" / "curves.csv");
    CHECK(curves.substr(curves.find('\n')) == recomputed.substr(recomputed.find('\n')));
}
