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

#include "qlw/gradients/gradients.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "qlw/errors.hpp"
#include "qlw/sim/kernels.hpp"
#include "qlw/sim/run.hpp"
#include "qlw/training/loss.hpp"

namespace qlw::gradients {
namespace {

constexpr std::uint64_t kForwardSlot = std::numeric_limits<std::uint64_t>::max();

void check_slot(const circuits::CircuitTemplate &tmpl, std::size_t slot) {
    if (slot >= tmpl.n_params()) {
        throw UsageError("parameter slot " + std::to_string(slot) + " out of range (" +
                         std::to_string(tmpl.n_params()) + " slots)");
    }
}

// Per-sample contribution to the batch gradient.
struct SampleTerms {
    std::vector<double> grad;
    double loss = 0.0;
};

SampleTerms sample_terms(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                         std::span<const std::size_t> trainable, const LabeledSample &sample,
                         std::uint64_t index, const Estimator &est) {
    const sim::StateVector zero(tmpl.n_qubits());
    const auto shifted = shifted_expectations(tmpl, params, trainable, zero, sample.features);

    const double z = estimate(est, shifted.forward, index, kForwardSlot, Draw::Forward);
    const double e = training::rescale_readout(z);
    const double dl_de = training::bce_grad(e, sample.label);

    SampleTerms out;
    out.loss = training::bce_loss(e, sample.label);
    out.grad.resize(trainable.size());
    for (std::size_t i = 0; i < trainable.size(); ++i) {
        const double zp = estimate(est, shifted.plus[i], index, trainable[i], Draw::Plus);
        const double zm = estimate(est, shifted.minus[i], index, trainable[i], Draw::Minus);
        // d/dtheta of the rescaled readout is half the raw-Z shift-rule gradient
        out.grad[i] = dl_de * 0.5 * kShiftScale * (zp - zm);
    }
    return out;
}

// Exact mode only needs E+ - E-, which equals 2 Im<lambda|P|phi> with phi the state right
// after the rotation and lambda the readout observable propagated back to that point. One
// reverse sweep gives it for every slot.
SampleTerms adjoint_sample_terms(const circuits::CircuitTemplate &tmpl,
                                 std::span<const double> params,
                                 std::span<const std::size_t> trainable,
                                 const LabeledSample &sample) {
    const std::size_t n = tmpl.n_qubits();
    sim::StateVector phi(n);
    sim::prepare_input(tmpl, phi, sample.features);
    sim::apply_layers(tmpl, params, phi, 0, tmpl.depth());

    const double z = sim::expectation_z(phi, tmpl.readout_qubit());
    const double e = training::rescale_readout(z);
    const double dl_de = training::bce_grad(e, sample.label);

    SampleTerms out;
    out.loss = training::bce_loss(e, sample.label);
    out.grad.assign(trainable.size(), 0.0);

    std::vector<std::ptrdiff_t> position(tmpl.n_params(), -1);
    std::size_t lowest = tmpl.n_params();
    for (std::size_t i = 0; i < trainable.size(); ++i) {
        position[trainable[i]] = static_cast<std::ptrdiff_t>(i);
        lowest = std::min(lowest, trainable[i]);
    }

    sim::StateVector lambda = phi;
    sim::apply_pauli(lambda, tmpl.readout_qubit(), sim::Axis::Z);
    sim::StateVector scratch(n);
    const std::size_t dim = phi.dim();
    auto *pa = phi.amplitudes().data();
    auto *la = lambda.amplitudes().data();
    auto *sa = scratch.amplitudes().data();

    for (std::size_t k = tmpl.depth(); k-- > lowest / n;) {
        const auto signs = tmpl.entangler_signs(k);
        if (!signs.empty()) {
            sim::kernels::signs(pa, dim, signs.data());
            sim::kernels::signs(la, dim, signs.data());
        }
        const auto &axes = tmpl.layer(k).axes;
        for (std::size_t q = n; q-- > 0;) {
            const std::size_t slot = k * n + q;
            const std::size_t mask = phi.mask(q);
            if (position[slot] >= 0) {
                std::copy(pa, pa + dim, sa);
                sim::kernels::pauli(sa, dim, mask, axes[q]);
                double im = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    im += la[i].real() * sa[i].imag() - la[i].imag() * sa[i].real();
                }
                // E+ - E- = 2 Im<lambda|P|phi>
                out.grad[static_cast<std::size_t>(position[slot])] =
                    dl_de * 0.5 * kShiftScale * (2.0 * im);
            }
            sim::kernels::rotation(pa, dim, mask, axes[q], -params[slot]);
            sim::kernels::rotation(la, dim, mask, axes[q], -params[slot]);
        }
    }
    return out;
}

void check_batch(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                 std::span<const std::size_t> trainable, std::span<const LabeledSample> batch) {
    if (batch.empty()) {
        throw UsageError("batch must not be empty");
    }
    if (trainable.empty()) {
        throw UsageError("trainable slot set must not be empty");
    }
    if (params.size() != tmpl.n_params()) {
        throw UsageError("parameter count does not match the template");
    }
    for (const auto slot : trainable) {
        check_slot(tmpl, slot);
    }
}

BatchGradient reduce(std::vector<SampleTerms> &terms, std::size_t n_trainable,
                     const Estimator &est) {
    BatchGradient out;
    out.grad.assign(n_trainable, 0.0);
    for (const auto &t : terms) {
        out.loss += t.loss;
        for (std::size_t i = 0; i < n_trainable; ++i) {
            out.grad[i] += t.grad[i];
        }
    }
    const auto b = static_cast<double>(terms.size());
    out.loss /= b;
    for (auto &g : out.grad) {
        g /= b;
    }
    const std::uint64_t m = est.charged_shots();
    out.gradient_shots = 2 * static_cast<std::uint64_t>(n_trainable) * m * terms.size();
    out.forward_shots = m * terms.size();
    return out;
}

} // namespace

Estimator Estimator::sampled(std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw UsageError("shot count must be at least 1");
    }
    return {shots, seed};
}

Rng draw_stream(const Estimator &est, std::uint64_t sample, std::uint64_t slot,
                Draw draw) noexcept {
    return Rng::keyed(est.seed, {sample, slot, static_cast<std::uint64_t>(draw)});
}

double estimate(const Estimator &est, double exact_z, std::uint64_t sample, std::uint64_t slot,
                Draw draw) {
    if (est.is_exact()) {
        return exact_z;
    }
    auto rng = draw_stream(est, sample, slot, draw);
    return sim::sample_from_expectation(exact_z, est.shots, rng);
}

ShiftedExpectations shifted_expectations(const circuits::CircuitTemplate &tmpl,
                                         std::span<const double> params,
                                         std::span<const std::size_t> slots,
                                         const sim::StateVector &input,
                                         std::span<const double> features) {
    if (params.size() != tmpl.n_params()) {
        throw UsageError("parameter count does not match the template");
    }
    const std::size_t n = tmpl.n_qubits();
    std::vector<char> needed(tmpl.depth(), 0);
    for (const auto slot : slots) {
        check_slot(tmpl, slot);
        needed[slot / n] = 1;
    }

    // Forward pass, keeping the state between each needed layer's rotations and its CZ set.
    sim::StateVector state = input;
    sim::prepare_input(tmpl, state, features);
    std::vector<sim::StateVector> mids;
    std::vector<std::size_t> mid_of(tmpl.depth(), 0);
    for (std::size_t k = 0; k < tmpl.depth(); ++k) {
        const auto &layer = tmpl.layer(k);
        for (std::size_t q = 0; q < n; ++q) {
            sim::apply_rotation(state, q, layer.axes[q], params[k * n + q]);
        }
        if (needed[k]) {
            mid_of[k] = mids.size();
            mids.push_back(state);
        }
        if (!layer.entangler.empty()) {
            sim::apply_signs(state, tmpl.entangler_signs(k));
        }
    }

    const std::size_t readout = tmpl.readout_qubit();
    ShiftedExpectations out;
    out.forward = sim::expectation_z(state, readout);
    out.plus.resize(slots.size());
    out.minus.resize(slots.size());

    // With R(+-s) = (1 -+ iP)/sqrt(2), the shifted final states are (a -+ i b)/sqrt(2) where
    // a is the unshifted final state and b is the suffix applied to P times the mid state.
    sim::StateVector branch(n);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::size_t k = slots[i] / n;
        const std::size_t q = slots[i] % n;
        branch.assign(mids[mid_of[k]]);
        sim::apply_pauli(branch, q, tmpl.layer(k).axes[q]);
        sim::apply_suffix_after_rotations(tmpl, params, branch, k);
        const double mean = 0.5 * (out.forward + sim::expectation_z(branch, readout));
        const double cross = sim::imag_cross_z(state, branch, readout);
        out.plus[i] = std::clamp(mean + cross, -1.0, 1.0);
        out.minus[i] = std::clamp(mean - cross, -1.0, 1.0);
    }
    return out;
}

double shift_grad(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                  std::size_t slot, const sim::StateVector &input, const Estimator &est,
                  std::span<const double> features) {
    check_slot(tmpl, slot);
    const std::size_t slots[] = {slot};
    const auto shifted = shifted_expectations(tmpl, params, slots, input, features);
    const double zp = estimate(est, shifted.plus[0], 0, slot, Draw::Plus);
    const double zm = estimate(est, shifted.minus[0], 0, slot, Draw::Minus);
    return kShiftScale * (zp - zm);
}

double fd_grad(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
               std::size_t slot, const sim::StateVector &input, double h,
               std::span<const double> features) {
    check_slot(tmpl, slot);
    if (!(h > 0.0)) {
        throw UsageError("finite-difference step must be positive");
    }
    std::vector<double> shifted(params.begin(), params.end());
    shifted[slot] = params[slot] + h;
    const double up = sim::circuit_expectation(tmpl, shifted, input, features);
    shifted[slot] = params[slot] - h;
    const double down = sim::circuit_expectation(tmpl, shifted, input, features);
    return (up - down) / (2.0 * h);
}

BatchGradient batch_loss_grad(const circuits::CircuitTemplate &tmpl,
                              std::span<const double> params,
                              std::span<const std::size_t> trainable,
                              std::span<const LabeledSample> batch, const Estimator &est) {
    check_batch(tmpl, params, trainable, batch);
    std::vector<SampleTerms> terms(batch.size());
    const auto count = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        terms[idx] = est.is_exact() ? adjoint_sample_terms(tmpl, params, trainable, batch[idx])
                                    : sample_terms(tmpl, params, trainable, batch[idx], idx, est);
    }
    return reduce(terms, trainable.size(), est);
}

namespace reference {

double shift_grad(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                  std::size_t slot, const sim::StateVector &input, const Estimator &est,
                  std::span<const double> features) {
    check_slot(tmpl, slot);
    std::vector<double> shifted(params.begin(), params.end());
    shifted[slot] = params[slot] + kShift;
    const double ep = sim::circuit_expectation(tmpl, shifted, input, features);
    shifted[slot] = params[slot] - kShift;
    const double em = sim::circuit_expectation(tmpl, shifted, input, features);
    return kShiftScale * (estimate(est, ep, 0, slot, Draw::Plus) -
                          estimate(est, em, 0, slot, Draw::Minus));
}

BatchGradient batch_loss_grad(const circuits::CircuitTemplate &tmpl,
                              std::span<const double> params,
                              std::span<const std::size_t> trainable,
                              std::span<const LabeledSample> batch, const Estimator &est) {
    check_batch(tmpl, params, trainable, batch);
    const sim::StateVector zero(tmpl.n_qubits());
    std::vector<SampleTerms> terms(batch.size());
    std::vector<double> shifted(params.begin(), params.end());
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const auto &sample = batch[j];
        const double forward = sim::circuit_expectation(tmpl, params, zero, sample.features);
        const double z = estimate(est, forward, j, kForwardSlot, Draw::Forward);
        const double e = training::rescale_readout(z);
        const double dl_de = training::bce_grad(e, sample.label);
        terms[j].loss = training::bce_loss(e, sample.label);
        terms[j].grad.resize(trainable.size());
        for (std::size_t i = 0; i < trainable.size(); ++i) {
            const std::size_t slot = trainable[i];
            shifted[slot] = params[slot] + kShift;
            const double ep = sim::circuit_expectation(tmpl, shifted, zero, sample.features);
            shifted[slot] = params[slot] - kShift;
            const double em = sim::circuit_expectation(tmpl, shifted, zero, sample.features);
            shifted[slot] = params[slot];
            const double zp = estimate(est, ep, j, slot, Draw::Plus);
            const double zm = estimate(est, em, j, slot, Draw::Minus);
            terms[j].grad[i] = dl_de * 0.5 * kShiftScale * (zp - zm);
        }
    }
    return reduce(terms, trainable.size(), est);
}

} // namespace reference
} // namespace qlw::gradients
