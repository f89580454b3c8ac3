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

// Independent reference implementations used only by the tests. Nothing here calls into the
// simulator kernels or the Eigen eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qlw/circuits/template.hpp"

namespace qlw::oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix pauli(sim::Axis axis) {
    Matrix m(2, 2);
    switch (axis) {
    case sim::Axis::X:
        m << 0, 1, 1, 0;
        break;
    case sim::Axis::Y:
        m << 0, Complex(0, -1), Complex(0, 1), 0;
        break;
    case sim::Axis::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

inline Matrix rotation_2x2(sim::Axis axis, double angle) {
    return std::cos(angle / 2) * Matrix::Identity(2, 2) -
           Complex(0, 1) * std::sin(angle / 2) * pauli(axis);
}

inline Matrix hadamard_2x2() {
    Matrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// I ⊗ ... ⊗ g ⊗ ... ⊗ I with qubit 0 leftmost (most significant).
inline Matrix embed(const Matrix &g, std::size_t qubit, std::size_t n) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        out = kron(out, q == qubit ? g : Matrix::Identity(2, 2));
    }
    return out;
}

inline Matrix cz_full(std::size_t a, std::size_t b, std::size_t n) {
    Matrix p1(2, 2);
    p1 << 0, 0, 0, 1;
    Matrix proj = Matrix::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        proj = kron(proj, (q == a || q == b) ? p1 : Matrix::Identity(2, 2));
    }
    const auto dim = proj.rows();
    return Matrix::Identity(dim, dim) - 2.0 * proj;
}

inline Matrix z_full(std::size_t qubit, std::size_t n) { return embed(pauli(sim::Axis::Z), qubit, n); }

// Full unitary of prefix + layers, multiplied gate by gate.
inline Matrix circuit_unitary(const circuits::CircuitTemplate &tmpl, std::span<const double> params,
                              std::span<const double> features = {}) {
    const std::size_t n = tmpl.n_qubits();
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix u = Matrix::Identity(dim, dim);
    if (tmpl.prefix() == circuits::PrefixKind::HadamardWall) {
        for (std::size_t q = 0; q < n; ++q) {
            u = embed(hadamard_2x2(), q, n) * u;
        }
    } else if (tmpl.prefix() == circuits::PrefixKind::DataLayer) {
        for (std::size_t q = 0; q < n; ++q) {
            // exp(-i d X) = Rx(2d)
            u = embed(rotation_2x2(sim::Axis::X, 2 * features[q]), q, n) * u;
        }
    }
    std::size_t slot = 0;
    for (const auto &layer : tmpl.layers()) {
        for (std::size_t q = 0; q < n; ++q) {
            u = embed(rotation_2x2(layer.axes[q], params[slot++]), q, n) * u;
        }
        for (const auto &[a, b] : layer.entangler) {
            u = cz_full(a, b, n) * u;
        }
    }
    return u;
}

inline Eigen::VectorXcd zero_state(std::size_t n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v(0) = 1;
    return v;
}

inline double expectation(const Eigen::VectorXcd &psi, std::size_t qubit, std::size_t n) {
    return (psi.adjoint() * z_full(qubit, n) * psi)(0, 0).real();
}

// Cyclic Jacobi eigendecomposition of a real symmetric matrix. Returns (eigenvalues,
// eigenvectors as columns), unsorted.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(Eigen::MatrixXd a,
                                                                int max_sweeps = 100) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) {
            break;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    return {a.diagonal(), v};
}

// Leading k principal directions of rows of `x` via the Gram matrix X_c X_c^T, which is small
// when there are fewer samples than pixels. Rows of the result are unit vectors, descending.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> gram_pca(const Eigen::MatrixXd &x, std::size_t k) {
    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - mean;
    const Eigen::MatrixXd gram = xc * xc.transpose();
    auto [vals, vecs] = jacobi_eigen(gram);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(vals.size()));
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<Eigen::Index>(i);
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals(a) > vals(b); });
    Eigen::VectorXd eig(static_cast<Eigen::Index>(k));
    Eigen::MatrixXd comps(static_cast<Eigen::Index>(k), x.cols());
    const double denom = static_cast<double>(x.rows() - 1);
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = order[i];
        Eigen::VectorXd dir = xc.transpose() * vecs.col(j);
        dir.normalize();
        comps.row(static_cast<Eigen::Index>(i)) = dir.transpose();
        eig(static_cast<Eigen::Index>(i)) = vals(j) / denom;
    }
    return {eig, comps};
}

} // namespace qlw::oracle
