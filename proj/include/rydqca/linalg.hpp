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

#include <cstddef>
#include <functional>

#include "rydqca/types.hpp"

namespace rydqca::linalg {

/// exp(-i H t) for Hermitian H (spectral decomposition).
CMatrix expm_hermitian(const CMatrix &h, double t);

/// exp(-i H t) for real symmetric H.
CMatrix expm_symmetric(const Eigen::MatrixXd &h, double t);

/// Principal matrix logarithm of a unitary (spectral decomposition of a
/// normal matrix via complex Schur form).
CMatrix logm_unitary(const CMatrix &u);

/// Largest singular value.
double operator_norm(const CMatrix &a);

/// out = H * in, both of length dim.
using HamiltonianApply = std::function<void(const Complex *in, Complex *out)>;

struct KrylovOptions {
    double tol = 1e-12;
    int max_dim = 40;
    int max_substeps = 100000;
};

struct KrylovStats {
    int substeps = 0;
    int matvecs = 0;
};

/// psi <- exp(-i H t) psi by Lanczos with full reorthogonalization. The
/// step is split adaptively until the a-posteriori residual estimate of
/// each substep is below tol * (dt / t) * |psi|. Throws NumericError when
/// max_substeps is exhausted.
KrylovStats expmv_lanczos(const HamiltonianApply &h, std::size_t dim, double t,
                          Complex *psi, const KrylovOptions &options = {});

/// Tensor product a (x) b with a acting on the higher-order index bits.
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Embeds a one-qubit operator on `qubit` (bit `qubit` of the index) in
/// an n-qubit space.
CMatrix embed_1q(const CMatrix2 &u, std::size_t qubit, std::size_t n);

} // namespace rydqca::linalg
