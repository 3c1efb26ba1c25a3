// Copyright 2026 The rydqca Authors
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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace rydqca {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using CMatrix = Eigen::MatrixXcd;
using CMatrix2 = Eigen::Matrix2cd;
using RVector = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

/// Single-atom Pauli algebra in the (|g>, |r>) basis, index 0 = |g>, 1 = |r>.
/// sigma^Z = |r><r| - |g><g|, sigma^X = |r><g| + |g><r|, sigma^Y = i sigma^X sigma^Z.
/// The same matrices are used for data qubits with |0> = |g>, |1> = |r>.
namespace pauli_matrix {
inline CMatrix2 identity() { return CMatrix2::Identity(); }
inline CMatrix2 x() {
    CMatrix2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
inline CMatrix2 y() {
    CMatrix2 m;
    m << 0.0, kI, -kI, 0.0;
    return m;
}
inline CMatrix2 z() {
    CMatrix2 m;
    m << -1.0, 0.0, 0.0, 1.0;
    return m;
}
/// 0 -> I, 1 -> X, 2 -> Y, 3 -> Z
inline CMatrix2 by_index(int a) {
    switch (a) {
    case 1:
        return x();
    case 2:
        return y();
    case 3:
        return z();
    default:
        return identity();
    }
}
} // namespace pauli_matrix

/// exp(-i theta P) for a single-qubit Pauli P (P^2 = I).
inline CMatrix2 pauli_rotation(const CMatrix2 &p, double theta) {
    return std::cos(theta) * CMatrix2::Identity() - kI * std::sin(theta) * p;
}

} // namespace rydqca
