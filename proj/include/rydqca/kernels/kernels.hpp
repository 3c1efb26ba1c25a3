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

// Data-parallel state-vector kernels. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is compiled separately and selected at
// runtime when the CPU supports it. Both variants are exercised by the
// equivalence tests in tests/unit/test_kernels.cpp.

#include <cstddef>
#include <span>
#include <string_view>

#include "rydqca/types.hpp"

namespace rydqca::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
    const char *name;
    Backend backend;
    /// In-place 2x2 gate on the qubit whose index bit is `stride` (a power
    /// of two). m is row-major {m00, m01, m10, m11}.
    void (*apply_1q)(Complex *psi, std::size_t dim, std::size_t stride,
                     const Complex *m);
    /// psi[i] *= diag[i]
    void (*apply_diagonal)(Complex *psi, const Complex *diag, std::size_t n);
    /// y += a * x
    void (*axpy)(Complex a, const Complex *x, Complex *y, std::size_t n);
    /// x *= a
    void (*scale)(Complex a, Complex *x, std::size_t n);
    /// sum_i conj(a_i) b_i
    Complex (*dot)(const Complex *a, const Complex *b, std::size_t n);
    /// sum_i |a_i|^2
    double (*norm2)(const Complex *a, std::size_t n);
    /// <psi| sigma^X_q |psi>
    double (*expval_x)(const Complex *psi, std::size_t dim, std::size_t stride);
    /// <psi| sigma^Z_q |psi> with sigma^Z = diag(-1, +1)
    double (*expval_z)(const Complex *psi, std::size_t dim, std::size_t stride);
};

const KernelTable &scalar_table();
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable *avx2_table();
bool cpu_supports_avx2();

/// Currently selected table. Defaults to AVX2 when available unless the
/// environment variable RYDQCA_KERNELS is set to "scalar".
const KernelTable &active();
/// Force a backend. Throws ConfigError if it is unavailable.
void select(Backend backend);
std::string_view active_name();

// Convenience wrappers over the active table.

inline void apply_1q(std::span<Complex> psi, std::size_t qubit,
                     const CMatrix2 &m) {
    const Complex mm[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    active().apply_1q(psi.data(), psi.size(), std::size_t{1} << qubit, mm);
}
inline void apply_diagonal(std::span<Complex> psi,
                           std::span<const Complex> diag) {
    active().apply_diagonal(psi.data(), diag.data(), psi.size());
}
inline void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    active().axpy(a, x.data(), y.data(), y.size());
}
inline void scale(Complex a, std::span<Complex> x) {
    active().scale(a, x.data(), x.size());
}
inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline double norm2(std::span<const Complex> a) {
    return active().norm2(a.data(), a.size());
}
inline double expval_x(std::span<const Complex> psi, std::size_t qubit) {
    return active().expval_x(psi.data(), psi.size(), std::size_t{1} << qubit);
}
inline double expval_z(std::span<const Complex> psi, std::size_t qubit) {
    return active().expval_z(psi.data(), psi.size(), std::size_t{1} << qubit);
}

} // namespace rydqca::kernels
