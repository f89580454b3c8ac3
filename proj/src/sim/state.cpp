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

#include "qlw/sim/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlw/errors.hpp"
#include "qlw/sim/kernels.hpp"

namespace qlw::sim {
namespace {

void check_qubit(const StateVector &state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw UsageError("qubit index " + std::to_string(qubit) + " out of range for " +
                         std::to_string(state.n_qubits()) + " qubits");
    }
}

} // namespace

char axis_name(Axis axis) noexcept {
    switch (axis) {
    case Axis::X:
        return 'X';
    case Axis::Y:
        return 'Y';
    case Axis::Z:
        return 'Z';
    }
    return '?';
}

Axis axis_from_name(char name) {
    switch (name) {
    case 'X':
    case 'x':
        return Axis::X;
    case 'Y':
    case 'y':
        return Axis::Y;
    case 'Z':
    case 'z':
        return Axis::Z;
    default:
        throw UsageError(std::string("unknown rotation axis '") + name + "'");
    }
}

StateVector::StateVector(std::size_t n_qubits) : StateVector(basis(n_qubits, 0)) {}

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    if (n_qubits >= 31) {
        throw UsageError("statevector limited to 30 qubits");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw UsageError("basis index out of range");
    }
    std::vector<Amplitude> amps(dim);
    amps[index] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::size_t n_qubits, std::vector<Amplitude> amplitudes) {
    if (n_qubits >= 31 || amplitudes.size() != (std::size_t{1} << n_qubits)) {
        throw UsageError("amplitude count must be 2^n_qubits");
    }
    return {n_qubits, std::move(amplitudes)};
}

double StateVector::norm() const noexcept {
    double acc = 0.0;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void StateVector::assign(const StateVector &other) {
    n_qubits_ = other.n_qubits_;
    amplitudes_.assign(other.amplitudes_.begin(), other.amplitudes_.end());
}

void apply_rotation(StateVector &state, std::size_t qubit, Axis axis, double angle) {
    check_qubit(state, qubit);
    kernels::rotation(state.amplitudes().data(), state.dim(), state.mask(qubit), axis, angle);
}

void apply_cz(StateVector &state, std::size_t a, std::size_t b) {
    check_qubit(state, a);
    check_qubit(state, b);
    if (a == b) {
        throw UsageError("CZ needs two distinct qubits");
    }
    kernels::cz(state.amplitudes().data(), state.dim(), state.mask(a), state.mask(b));
}

void apply_hadamard(StateVector &state, std::size_t qubit) {
    check_qubit(state, qubit);
    kernels::hadamard(state.amplitudes().data(), state.dim(), state.mask(qubit));
}

void apply_pauli(StateVector &state, std::size_t qubit, Axis axis) {
    check_qubit(state, qubit);
    kernels::pauli(state.amplitudes().data(), state.dim(), state.mask(qubit), axis);
}

void apply(StateVector &state, const GateOp &op) {
    switch (op.kind) {
    case GateOp::Kind::Rotation:
        apply_rotation(state, op.qubit, op.axis, op.angle);
        break;
    case GateOp::Kind::CZ:
        apply_cz(state, op.qubit, op.other);
        break;
    case GateOp::Kind::Hadamard:
        apply_hadamard(state, op.qubit);
        break;
    }
}

void apply_signs(StateVector &state, std::span<const double> signs) {
    if (signs.size() != state.dim()) {
        throw UsageError("sign mask length must match the state dimension");
    }
    kernels::signs(state.amplitudes().data(), state.dim(), signs.data());
}

std::vector<double> cz_sign_mask(std::size_t n_qubits,
                                 std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<double> signs(dim, 1.0);
    for (const auto &[a, b] : pairs) {
        if (a >= n_qubits || b >= n_qubits || a == b) {
            throw UsageError("invalid CZ pair");
        }
        const std::size_t both = (std::size_t{1} << (n_qubits - 1 - a)) |
                                 (std::size_t{1} << (n_qubits - 1 - b));
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & both) == both) {
                signs[i] = -signs[i];
            }
        }
    }
    return signs;
}

double expectation_z(const StateVector &state, std::size_t qubit) {
    check_qubit(state, qubit);
    const auto amps = state.amplitudes();
    const std::size_t mask = state.mask(qubit);
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        if (i & mask) {
            minus += p;
        } else {
            plus += p;
        }
    }
    return plus - minus;
}

double imag_cross_z(const StateVector &a, const StateVector &b, std::size_t qubit) {
    check_qubit(a, qubit);
    if (a.dim() != b.dim()) {
        throw UsageError("states differ in size");
    }
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    const std::size_t mask = a.mask(qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        // Im(conj(x) * y)
        const double term = x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
        acc += (i & mask) ? -term : term;
    }
    return acc;
}

double sample_from_expectation(double exact_z, std::uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw UsageError("shot count must be at least 1");
    }
    const double p_plus = std::clamp(0.5 * (1.0 + exact_z), 0.0, 1.0);
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < shots; ++i) {
        k += rng.uniform() < p_plus ? 1 : 0;
    }
    return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
}

double sample_expectation_z(const StateVector &state, std::size_t qubit, std::uint64_t shots,
                            Rng &rng) {
    return sample_from_expectation(expectation_z(state, qubit), shots, rng);
}

} // namespace qlw::sim
