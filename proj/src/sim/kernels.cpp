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

#include "qlw/sim/kernels.hpp"

#include <cmath>

namespace qlw::sim {
namespace {

// k-th basis index whose `mask` bit is clear.
inline std::size_t low_index(std::size_t k, std::size_t mask) noexcept {
    return ((k & ~(mask - 1)) << 1) | (k & (mask - 1));
}

inline std::ptrdiff_t half(std::size_t dim) noexcept { return static_cast<std::ptrdiff_t>(dim / 2); }

} // namespace

namespace kernels {

// Arithmetic is spelled out on real/imag parts; std::complex operator* would
// pull in the NaN-recovery slow path without -ffast-math.

void rotation(Amplitude *amps, std::size_t dim, std::size_t mask, Axis axis, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::ptrdiff_t pairs = half(dim);
    switch (axis) {
    case Axis::X:
#pragma omp parallel for if (dim >= kParallelDim)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const std::size_t i = low_index(static_cast<std::size_t>(k), mask);
            const std::size_t j = i | mask;
            const double ar = amps[i].real(), ai = amps[i].imag();
            const double br = amps[j].real(), bi = amps[j].imag();
            // [c, -is; -is, c]
            amps[i] = {c * ar + s * bi, c * ai - s * br};
            amps[j] = {c * br + s * ai, c * bi - s * ar};
        }
        break;
    case Axis::Y:
#pragma omp parallel for if (dim >= kParallelDim)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const std::size_t i = low_index(static_cast<std::size_t>(k), mask);
            const std::size_t j = i | mask;
            const double ar = amps[i].real(), ai = amps[i].imag();
            const double br = amps[j].real(), bi = amps[j].imag();
            // [c, -s; s, c]
            amps[i] = {c * ar - s * br, c * ai - s * bi};
            amps[j] = {s * ar + c * br, s * ai + c * bi};
        }
        break;
    case Axis::Z:
#pragma omp parallel for if (dim >= kParallelDim)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const std::size_t i = low_index(static_cast<std::size_t>(k), mask);
            const std::size_t j = i | mask;
            const double ar = amps[i].real(), ai = amps[i].imag();
            const double br = amps[j].real(), bi = amps[j].imag();
            // diag(c - is, c + is)
            amps[i] = {c * ar + s * ai, c * ai - s * ar};
            amps[j] = {c * br - s * bi, c * bi + s * br};
        }
        break;
    }
}

void pauli(Amplitude *amps, std::size_t dim, std::size_t mask, Axis axis) {
    const std::ptrdiff_t pairs = half(dim);
    switch (axis) {
    case Axis::X:
#pragma omp parallel for if (dim >= kParallelDim)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const std::size_t i = low_index(static_cast<std::size_t>(k), mask);
            std::swap(amps[i], amps[i | mask]);
        }
        break;
    case Axis::Y:
#pragma omp parallel for if (dim >= kParallelDim)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const std::size_t i = low_index(static_cast<std::size_t>(k), mask);
            const std::size_t j = i | mask;
            const Amplitude a = amps[i];
            const Amplitude b = amps[j];
            // Y = [0, -i; i, 0]
            amps[i] = {b.imag(), -b.real()};
            amps[j] = {-a.imag(), a.real()};
        }
        break;
    case Axis::Z:
#pragma omp parallel for if (dim >= kParallelDim)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const std::size_t j = low_index(static_cast<std::size_t>(k), mask) | mask;
            amps[j] = -amps[j];
        }
        break;
    }
}

void hadamard(Amplitude *amps, std::size_t dim, std::size_t mask) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::ptrdiff_t pairs = half(dim);
#pragma omp parallel for if (dim >= kParallelDim)
    for (std::ptrdiff_t k = 0; k < pairs; ++k) {
        const std::size_t i = low_index(static_cast<std::size_t>(k), mask);
        const std::size_t j = i | mask;
        const Amplitude a = amps[i];
        const Amplitude b = amps[j];
        amps[i] = {r * (a.real() + b.real()), r * (a.imag() + b.imag())};
        amps[j] = {r * (a.real() - b.real()), r * (a.imag() - b.imag())};
    }
}

void cz(Amplitude *amps, std::size_t dim, std::size_t mask_a, std::size_t mask_b) {
    const std::size_t both = mask_a | mask_b;
    const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for if (dim >= kParallelDim)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if ((static_cast<std::size_t>(i) & both) == both) {
            amps[i] = -amps[i];
        }
    }
}

void signs(Amplitude *amps, std::size_t dim, const double *signs) {
    const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for if (dim >= kParallelDim)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        amps[i] = {amps[i].real() * signs[i], amps[i].imag() * signs[i]};
    }
}

} // namespace kernels

namespace reference {

void single_qubit(StateVector &state, std::size_t qubit, const Amplitude (&matrix)[2][2]) {
    auto amps = state.amplitudes();
    const std::size_t mask = state.mask(qubit);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) {
            continue;
        }
        const Amplitude a = amps[i];
        const Amplitude b = amps[i | mask];
        amps[i] = matrix[0][0] * a + matrix[0][1] * b;
        amps[i | mask] = matrix[1][0] * a + matrix[1][1] * b;
    }
}

void rotation(StateVector &state, std::size_t qubit, Axis axis, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const Amplitude is{0.0, s};
    switch (axis) {
    case Axis::X: {
        const Amplitude m[2][2] = {{c, -is}, {-is, c}};
        single_qubit(state, qubit, m);
        break;
    }
    case Axis::Y: {
        const Amplitude m[2][2] = {{c, -s}, {s, c}};
        single_qubit(state, qubit, m);
        break;
    }
    case Axis::Z: {
        const Amplitude m[2][2] = {{Amplitude{c, -s}, 0.0}, {0.0, Amplitude{c, s}}};
        single_qubit(state, qubit, m);
        break;
    }
    }
}

void cz(StateVector &state, std::size_t a, std::size_t b) {
    auto amps = state.amplitudes();
    const std::size_t both = state.mask(a) | state.mask(b);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) {
            amps[i] = -amps[i];
        }
    }
}

double expectation_z(const StateVector &state, std::size_t qubit) {
    const auto amps = state.amplitudes();
    const std::size_t mask = state.mask(qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += ((i & mask) ? -1.0 : 1.0) * std::norm(amps[i]);
    }
    return acc;
}

} // namespace reference
} // namespace qlw::sim
