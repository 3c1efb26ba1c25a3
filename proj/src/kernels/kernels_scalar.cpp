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
#include "rydqca/kernels/kernels.hpp"

namespace rydqca::kernels {
namespace {

void apply_1q_scalar(Complex *psi, std::size_t dim, std::size_t stride,
                     const Complex *m) {
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            const Complex v0 = psi[i0];
            const Complex v1 = psi[i1];
            psi[i0] = m[0] * v0 + m[1] * v1;
            psi[i1] = m[2] * v0 + m[3] * v1;
        }
    }
}

void apply_diagonal_scalar(Complex *psi, const Complex *diag, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        psi[i] *= diag[i];
    }
}

void axpy_scalar(Complex a, const Complex *x, Complex *y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += a * x[i];
    }
}

void scale_scalar(Complex a, Complex *x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= a;
    }
}

Complex dot_scalar(const Complex *a, const Complex *b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm2_scalar(const Complex *a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += std::norm(a[i]);
    }
    return s;
}

double expval_x_scalar(const Complex *psi, std::size_t dim,
                       std::size_t stride) {
    double s = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const Complex v0 = psi[base + j];
            const Complex v1 = psi[base + j + stride];
            s += v0.real() * v1.real() + v0.imag() * v1.imag();
        }
    }
    return 2.0 * s;
}

double expval_z_scalar(const Complex *psi, std::size_t dim,
                       std::size_t stride) {
    double s = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            s += std::norm(psi[base + j + stride]) - std::norm(psi[base + j]);
        }
    }
    return s;
}

} // namespace

const KernelTable &scalar_table() {
    static const KernelTable table{
        "scalar",         Backend::Scalar,   apply_1q_scalar,
        apply_diagonal_scalar, axpy_scalar,  scale_scalar,
        dot_scalar,       norm2_scalar,      expval_x_scalar,
        expval_z_scalar};
    return table;
}

} // namespace rydqca::kernels
