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

// Acceptance checks. Usage: qlw_acceptance [criterion ...]; with no arguments every
// criterion runs. Prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "../oracle.hpp"
#include "qlw/cli/commands.hpp"
#include "qlw/cli/config.hpp"
#include "qlw/experiments/multi_run.hpp"
#include "qlw/experiments/stats.hpp"
#include "qlw/experiments/variance_scan.hpp"
#include "qlw/gradients/gradients.hpp"
#include "qlw/rng.hpp"
#include "qlw/sim/run.hpp"
#include "qlw/training/schedule.hpp"
#include "qlw/training/trainer.hpp"

namespace fs = std::filesystem;
using namespace qlw;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto &a : out) a = 2 * pi * rng.uniform();
    return out;
}

cli::ExperimentConfig shipped(const std::string &name) {
    auto doc = cli::read_json_file(fs::path(QLW_SOURCE_DIR) / "configs" / name);
    doc["mnist_dir"] = (fs::path(QLW_SOURCE_DIR) / "data" / "mnist-5k").string();
    return cli::parse_config(doc);
}

Outcome gradient_exactness() {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const auto tmpl = circuits::random_template(4, 3, circuits::PrefixKind::None, t);
        const auto params = random_angles(tmpl.n_params(), 1000 + t);
        const sim::StateVector in(4);
        for (std::size_t slot = 0; slot < tmpl.n_params(); ++slot) {
            const double s = gradients::shift_grad(tmpl, params, slot, in, gradients::Estimator::exact());
            const double f = gradients::fd_grad(tmpl, params, slot, in, 1e-5);
            worst = std::max(worst, std::abs(s - f));
        }
    }
    return {worst < 1e-6, fmt("100 templates, max |shift - fd| = %.3g (limit 1e-6)", worst)};
}

Outcome simulator_correctness() {
    double worst = 1.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto tmpl = circuits::random_template(3, 3, circuits::PrefixKind::None, 500 + t);
        const auto params = random_angles(tmpl.n_params(), 900 + t);
        const auto out = sim::run_circuit(tmpl, params, sim::StateVector(3));
        const Eigen::VectorXcd psi = oracle::circuit_unitary(tmpl, params) * oracle::zero_state(3);
        std::complex<double> overlap = 0.0;
        for (std::size_t i = 0; i < out.dim(); ++i) {
            overlap += std::conj(psi(static_cast<Eigen::Index>(i))) * out.amplitudes()[i];
        }
        worst = std::min(worst, std::norm(overlap));
    }
    return {worst >= 1 - 1e-10, fmt("50 circuits, min fidelity = 1 - %.3g (limit 1 - 1e-10)", 1 - worst)};
}

Outcome barren_plateau() {
    const std::vector<std::size_t> qubits{2, 4, 6, 8};
    const std::vector<std::size_t> layers{5, 20, 50};
    const auto result = experiments::variance_scan(qubits, layers, 200, 2020);
    bool means_ok = true;
    double worst_z = 0.0;
    for (const auto &c : result.cells) {
        const double z = std::abs(c.mean) / c.stderr_mean;
        worst_z = std::max(worst_z, z);
        means_ok = means_ok && z <= 3.0;
    }
    // Least-squares fit of log(variance) against n at L = 50.
    std::vector<double> x;
    std::vector<double> y;
    for (const auto n : qubits) {
        x.push_back(static_cast<double>(n));
        y.push_back(std::log(result.at(n, 50).variance));
    }
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / k;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = intercept + slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - sy / k) * (y[i] - sy / k);
    }
    const double r2 = 1 - ss_res / ss_tot;
    return {means_ok && slope < 0 && r2 > 0.9,
            fmt("max |mean|/SE = %.2f (limit 3); L=50 log-variance slope %.3f (< 0), R^2 = %.4f (> 0.9)",
                worst_z, slope, r2)};
}

Outcome noiseless_equivalence() {
    const auto cfg = shipped("noiseless.json");
    std::map<experiments::Strategy, double> loss;
    std::map<experiments::Strategy, double> error;
    const std::size_t seeds = 5;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        auto seeded = cfg;
        seeded.encode.seed = seed;
        const auto data = cli::load_dataset(seeded);
        for (auto run : cfg.sweep) {
            run.template_seed = seed;
            const auto rec = experiments::run_once(run, data, experiments::run_seed(cfg.seed, seed));
            loss[run.strategy] += rec.rows.back().train_loss / seeds;
            error[run.strategy] += experiments::final_test_error(rec) / seeds;
        }
    }
    using experiments::Strategy;
    const auto in_range = [&](Strategy s) {
        return loss[s] >= 0.40 && loss[s] <= 0.62 && error[s] <= 0.2;
    };
    const bool ok = in_range(Strategy::Layerwise) && in_range(Strategy::CdlZero) &&
                    error[Strategy::CdlRandom] >= error[Strategy::CdlZero];
    return {ok, fmt("mean over 5 seeds: LL loss %.3f err %.3f; CDL-zero loss %.3f err %.3f; "
                    "CDL-random err %.3f (loss in [0.40, 0.62], err <= 0.2, random >= zero)",
                    loss[Strategy::Layerwise], error[Strategy::Layerwise], loss[Strategy::CdlZero],
                    error[Strategy::CdlZero], error[Strategy::CdlRandom])};
}

Outcome shot_noise() {
    const auto cfg = shipped("shot_noise.json");
    const auto data = cli::load_dataset(cfg);
    double ll = -1;
    double cdl = -1;
    for (const auto &run : cfg.sweep) {
        const auto stats = experiments::multi_run(run, data, cfg.n_runs, cfg.seed);
        const double p = experiments::success_probability(stats.runs, 0.65);
        (run.strategy == experiments::Strategy::Layerwise ? ll : cdl) = p;
    }
    return {ll >= 0.5 && ll > cdl,
            fmt("%zu runs each, success probability at accuracy 0.65: LL %.2f, CDL-zero %.2f "
                "(LL >= 0.5 and LL > CDL)", cfg.n_runs, ll, cdl)};
}

Outcome measurement_ledger() {
    const auto data_cfg = shipped("shot_noise.json");
    const auto data = cli::load_dataset(data_cfg);
    std::size_t checked = 0;
    bool ok = true;
    for (const auto strategy : {experiments::Strategy::Layerwise, experiments::Strategy::CdlZero}) {
        for (const std::uint64_t m : {10ULL, 3ULL}) {
            experiments::RunConfig run;
            run.strategy = strategy;
            run.layerwise.total_layers = 5;
            run.layerwise.epochs_per_segment = 1;
            run.layerwise.sweeps = 1;
            run.cdl_epochs = 3;
            run.shots = m;
            const auto schedule = experiments::build_schedule(run);
            const auto rec = experiments::run_once(run, data, 7 + m);
            ok = ok && !rec.diverged && rec.rows.size() == schedule.total_epochs();
            const std::uint64_t iterations = data.train.size() / run.batch_size;
            std::uint64_t r = 0;
            std::size_t row = 0;
            for (const auto &seg : schedule.segments) {
                const std::uint64_t n_p = seg.slots(run.n_qubits).size();
                for (std::size_t e = 0; e < seg.epochs && row < rec.rows.size(); ++e, ++row) {
                    for (std::uint64_t i = 0; i < iterations; ++i) {
                        r += 2 * n_p * m * run.batch_size;
                    }
                    const auto &got = rec.rows[row];
                    ok = ok && got.cumulative_measurements == r &&
                         got.wall_seconds_estimate == static_cast<double>(r) / 1e4 &&
                         experiments::runtime_estimate(got.cumulative_measurements) ==
                             static_cast<double>(r) / 1e4;
                    ++checked;
                }
            }
        }
    }
    return {ok, fmt("%zu epoch rows over 4 runs: r_i equals sum of 2*n_p*m*b exactly, runtime = r_i/1e4",
                    checked)};
}

Outcome schedule_law() {
    // Two qubits keep each instance cheap; the properties are about slots, not data.
    training::Dataset data;
    Rng rng(1);
    for (auto *split : {&data.train, &data.test}) {
        for (int i = 0; i < 4; ++i) {
            split->push_back({{2 * pi * rng.uniform(), 2 * pi * rng.uniform()}, i % 2});
        }
    }
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string first_failure;
    for (std::size_t total = 1; total <= 12; ++total) {
        for (std::size_t s = 1; s <= total; ++s) {
            for (std::size_t p = 1; p <= 4; ++p) {
                if ((total - s) % p != 0) continue;
                for (std::size_t q = p; q <= p + 2; ++q) {
                    for (const double r : {0.25, 0.5, 1.0}) {
                        training::LayerwiseOptions o;
                        o.total_layers = total;
                        o.start_layers = s;
                        o.layers_per_step = p;
                        o.freeze_window = q;
                        o.epochs_per_segment = 1;
                        o.phase_two_fraction = r;
                        o.sweeps = (total + s + p) % 3;
                        o.initial_always_active = (total + q) % 2 == 0;
                        const auto sched = training::ll_schedule(o);
                        ++instances;

                        std::vector<bool> covered(total * 2, false);
                        for (const auto &seg : sched.segments) {
                            for (const auto slot : seg.slots(2)) covered[slot] = true;
                        }
                        bool ok = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });

                        std::vector<double> before;
                        training::TrainOptions opt;
                        opt.shots = 5;
                        opt.batch_size = 2;
                        opt.eta = 0.1;
                        opt.seed = instances;
                        opt.observer = [&](std::size_t si, bool finished, std::span<const double> v) {
                            if (!finished) {
                                before.assign(v.begin(), v.end());
                                return;
                            }
                            const auto slots = sched.segments[si].slots(2);
                            for (std::size_t i = 0; i < before.size(); ++i) {
                                const bool trainable = std::find(slots.begin(), slots.end(), i) != slots.end();
                                if (!trainable && v[i] != before[i]) ok = false;
                            }
                        };
                        const auto tmpl = circuits::layerwise_template(2, s, p, total, instances);
                        (void)training::train(sched, tmpl, data, opt);
                        if (!ok) {
                            ++failures;
                            if (first_failure.empty()) {
                                first_failure = fmt(" first failure L=%zu s=%zu p=%zu q=%zu r=%.2f",
                                                    total, s, p, q, r);
                            }
                        }
                    }
                }
            }
        }
    }
    return {instances >= 500 && failures == 0,
            fmt("%zu schedule instances (>= 500), %zu violations", instances, failures) + first_failure};
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"gradient-exactness", gradient_exactness},
        {"simulator-correctness", simulator_correctness},
        {"barren-plateau-scan", barren_plateau},
        {"noiseless-equivalence", noiseless_equivalence},
        {"shot-noise-comparison", shot_noise},
        {"measurement-ledger", measurement_ledger},
        {"schedule-law", schedule_law},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failed = 0;
    for (const auto &[name, check] : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s: %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                    outcome.detail.c_str(), secs);
        std::fflush(stdout);
        failed += outcome.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
