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
 * Dense statevector over n qubits and the gate set used by the layered
 * circuits: single-qubit Pauli rotations, Hadamard and CZ.
 *
 * Layout: qubit 0 is the most significant bit of the basis index, so qubit q
 * flips index bit (n - 1 - q).
 *
 * Rotations use the half-angle convention R_P(theta) = exp(-i theta/2 P).
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qlw/rng.hpp"

namespace qlw::sim {

using Amplitude = std::complex<double>;

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

[[nodiscard]] char axis_name(Axis axis) noexcept;
[[nodiscard]] Axis axis_from_name(char name);

class StateVector {
  public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(std::size_t n_qubits);

    /// Computational basis state |index>.
    static StateVector basis(std::size_t n_qubits, std::size_t index);

    /// Takes ownership of `amplitudes`; the length must be 2^n_qubits. Not normalized.
    static StateVector from_amplitudes(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] double norm() const noexcept;

    /// Overwrites this state with `other` without reallocating when sizes match.
    void assign(const StateVector &other);

    /// Bit mask of qubit q inside a basis index.
    [[nodiscard]] std::size_t mask(std::size_t qubit) const noexcept {
        return std::size_t{1} << (n_qubits_ - 1 - qubit);
    }

  private:
    StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

    std::size_t n_qubits_;
    std::vector<Amplitude> amplitudes_;
};

struct GateOp {
    enum class Kind : std::uint8_t { Rotation, CZ, Hadamard };

    Kind kind;
    Axis axis = Axis::Z;
    std::size_t qubit = 0;
    std::size_t other = 0; ///< second qubit of a CZ
    double angle = 0.0;

    static GateOp rotation(Axis axis, std::size_t qubit, double angle) {
        return {Kind::Rotation, axis, qubit, 0, angle};
    }
    static GateOp cz(std::size_t a, std::size_t b) { return {Kind::CZ, Axis::Z, a, b, 0.0}; }
    static GateOp hadamard(std::size_t qubit) { return {Kind::Hadamard, Axis::Z, qubit, 0, 0.0}; }
};

void apply_rotation(StateVector &state, std::size_t qubit, Axis axis, double angle);
void apply_cz(StateVector &state, std::size_t a, std::size_t b);
void apply_hadamard(StateVector &state, std::size_t qubit);
/// Applies the bare Pauli operator (not a rotation).
void apply_pauli(StateVector &state, std::size_t qubit, Axis axis);
void apply(StateVector &state, const GateOp &op);

/// Multiplies amplitude i by signs[i]; signs are +1 or -1. Used for fused CZ sets.
void apply_signs(StateVector &state, std::span<const double> signs);

/// Diagonal of the product of CZ gates over `pairs`, as +1/-1 per basis index.
[[nodiscard]] std::vector<double>
cz_sign_mask(std::size_t n_qubits, std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// <psi|Z_qubit|psi>.
[[nodiscard]] double expectation_z(const StateVector &state, std::size_t qubit);

/// Im(<a|Z_qubit|b>).
[[nodiscard]] double imag_cross_z(const StateVector &a, const StateVector &b, std::size_t qubit);

/// m-shot estimate of <Z> for a qubit whose exact expectation is `exact_z`.
/// Draws m Bernoulli outcomes with P(+1) = (1 + exact_z) / 2 and returns 2k/m - 1.
[[nodiscard]] double sample_from_expectation(double exact_z, std::uint64_t shots, Rng &rng);

[[nodiscard]] double sample_expectation_z(const StateVector &state, std::size_t qubit,
                                          std::uint64_t shots, Rng &rng);

} // namespace qlw::sim
