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

#include "qlw/experiments/variance_scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "qlw/errors.hpp"
#include "qlw/gradients/gradients.hpp"
#include "qlw/training/record_io.hpp"

namespace qlw::experiments {
namespace {

constexpr std::uint64_t kScanStream = 0x5343414eULL;   // "SCAN"
constexpr std::uint64_t kAngleStream = 0x414e47ULL;    // "ANG"

VarianceCell summarize(std::size_t n, std::size_t l, std::span<const double> g) {
    VarianceCell cell{n, l};
    const auto count = static_cast<double>(g.size());
    for (const double v : g) {
        cell.mean += v;
    }
    cell.mean /= count;
    double m2 = 0.0;
    double m4 = 0.0;
    for (const double v : g) {
        const double d = v - cell.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    cell.variance = m2 / (count - 1.0);
    cell.stderr_mean = std::sqrt(cell.variance / count);
    const double pop2 = m2 / count;
    const double pop4 = m4 / count;
    cell.stderr_variance =
        std::sqrt(std::max(0.0, (pop4 - (count - 3.0) / (count - 1.0) * pop2 * pop2) / count));
    return cell;
}

} // namespace

const VarianceCell &VarianceScanResult::at(std::size_t n_qubits, std::size_t n_layers) const {
    for (const auto &c : cells) {
        if (c.n_qubits == n_qubits && c.n_layers == n_layers) {
            return c;
        }
    }
    throw UsageError("no scan cell for the requested size");
}

ScanInstance scan_instance(std::size_t n_qubits, std::size_t n_layers, std::size_t trial,
                           std::uint64_t seed) {
    if (n_layers == 0) {
        throw UsageError("scan circuits need at least one layer");
    }
    const std::uint64_t key = derive_seed(seed, {kScanStream, n_qubits, n_layers, trial});
    auto tmpl = circuits::random_template(n_qubits, n_layers, circuits::PrefixKind::HadamardWall,
                                          key);
    // Slot 0 acts on the |+> wall, where X is only a phase. Reading out its own qubit with a
    // Y rotation keeps the gradient alive at depth 1.
    tmpl.set_readout_qubit(0);
    circuits::Layer first = tmpl.layer(0);
    first.axes[0] = sim::Axis::Y;
    tmpl.replace_layers(0, std::span<const circuits::Layer>(&first, 1));

    std::vector<double> angles(tmpl.n_params());
    auto rng = Rng::keyed(key, {kAngleStream});
    for (auto &a : angles) {
        a = 2.0 * std::numbers::pi * rng.uniform();
    }
    return {std::move(tmpl), std::move(angles)};
}

VarianceScanResult variance_scan(std::span<const std::size_t> qubits,
                                 std::span<const std::size_t> layers, std::size_t trials,
                                 std::uint64_t seed, bool all_slots) {
    if (trials < 2) {
        throw UsageError("variance scan needs at least two trials");
    }
    VarianceScanResult result;
    result.trials = trials;
    result.seed = seed;
    result.all_slots = all_slots;
    const auto count = static_cast<std::ptrdiff_t>(trials);
    for (const auto n : qubits) {
        if (n < 2) {
            throw UsageError("variance scan needs at least two qubits per circuit");
        }
        for (const auto l : layers) {
            const std::size_t per_trial = all_slots ? n * l : 1;
            std::vector<double> grads(trials * per_trial);
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t t = 0; t < count; ++t) {
                const auto trial = static_cast<std::size_t>(t);
                const auto inst = scan_instance(n, l, trial, seed);
                std::vector<std::size_t> slots(per_trial);
                for (std::size_t s = 0; s < per_trial; ++s) {
                    slots[s] = s;
                }
                const auto shifted = gradients::shifted_expectations(
                    inst.tmpl, inst.angles, slots, sim::StateVector(n));
                for (std::size_t s = 0; s < per_trial; ++s) {
                    grads[trial * per_trial + s] =
                        gradients::kShiftScale * (shifted.plus[s] - shifted.minus[s]);
                }
            }
            result.cells.push_back(summarize(n, l, grads));
        }
    }
    return result;
}

void write_variance_csv(std::ostream &out, const VarianceScanResult &result,
                        const std::string &comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << kVarianceCsvHeader << '\n';
    for (const auto &c : result.cells) {
        out << c.n_qubits << ',' << c.n_layers << ',' << training::format_real(c.variance) << ','
            << training::format_real(c.stderr_variance) << ',' << training::format_real(c.mean)
            << ',' << training::format_real(c.stderr_mean) << '\n';
    }
}

} // namespace qlw::experiments
