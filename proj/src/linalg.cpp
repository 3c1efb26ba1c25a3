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
#include "rydqca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rydqca/errors.hpp"
#include "rydqca/kernels/kernels.hpp"

namespace rydqca::linalg {

CMatrix expm_hermitian(const CMatrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("Hermitian eigendecomposition failed");
    }
    const Eigen::VectorXd &w = es.eigenvalues();
    Eigen::VectorXcd phase(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phase[i] = std::exp(Complex(0.0, -w[i] * t));
    }
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix expm_symmetric(const Eigen::MatrixXd &h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("symmetric eigendecomposition failed");
    }
    const Eigen::VectorXd &w = es.eigenvalues();
    const Eigen::MatrixXd &v = es.eigenvectors();
    Eigen::VectorXd c(w.size()), s(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        c[i] = std::cos(w[i] * t);
        s[i] = -std::sin(w[i] * t);
    }
    const Eigen::MatrixXd re = v * c.asDiagonal() * v.transpose();
    const Eigen::MatrixXd im = v * s.asDiagonal() * v.transpose();
    CMatrix out(h.rows(), h.cols());
    out.real() = re;
    out.imag() = im;
    return out;
}

CMatrix logm_unitary(const CMatrix &u) {
    Eigen::ComplexSchur<CMatrix> schur(u);
    const CMatrix &t = schur.matrixT();
    const CMatrix &q = schur.matrixU();
    // A normal matrix has a diagonal Schur form; off-diagonal residue is
    // rounding noise and is dropped.
    Eigen::VectorXcd l(t.rows());
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        l[i] = std::log(t(i, i));
    }
    return q * l.asDiagonal() * q.adjoint();
}

double operator_norm(const CMatrix &a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
}

KrylovStats expmv_lanczos(const HamiltonianApply &h, std::size_t dim, double t,
                          Complex *psi, const KrylovOptions &options) {
    KrylovStats stats;
    if (dim == 0 || t == 0.0) {
        return stats;
    }
    const double total = std::abs(t);
    const double sign = t < 0 ? -1.0 : 1.0;
    const int m_max = std::max(2, std::min<int>(options.max_dim, static_cast<int>(dim)));

    std::vector<CVector> v(static_cast<std::size_t>(m_max) + 1, CVector(dim));
    CVector w(dim);
    std::vector<double> alpha, beta;
    double done = 0.0;

    while (done < total * (1.0 - 1e-15)) {
        if (stats.substeps >= options.max_substeps) {
            throw NumericError("Krylov propagation did not reach tolerance within " +
                               std::to_string(options.max_substeps) + " substeps");
        }
        const std::span<const Complex> psi_view(psi, dim);
        const double beta0 = std::sqrt(kernels::norm2(psi_view));
        if (beta0 == 0.0) {
            return stats;
        }
        std::copy(psi, psi + dim, v[0].begin());
        kernels::scale(1.0 / beta0, v[0]);
        alpha.clear();
        beta.clear();

        const double remaining = total - done;
        double dt = remaining;
        Eigen::VectorXcd coeff;
        int m = 0;
        bool accepted = false;

        auto small_exp = [&](int k, double step, double &err) {
            Eigen::VectorXd d(k), e(std::max(k - 1, 0));
            for (int i = 0; i < k; ++i) {
                d[i] = alpha[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i + 1 < k; ++i) {
                e[i] = beta[static_cast<std::size_t>(i)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
            const Eigen::MatrixXd &q = es.eigenvectors();
            Eigen::VectorXcd c(k);
            for (int i = 0; i < k; ++i) {
                Complex acc = 0.0;
                for (int j = 0; j < k; ++j) {
                    acc += q(i, j) * q(0, j) *
                           std::exp(Complex(0.0, -sign * es.eigenvalues()[j] * step));
                }
                c[i] = acc;
            }
            const double b = static_cast<std::size_t>(k) <= beta.size()
                                 ? beta[static_cast<std::size_t>(k) - 1]
                                 : 0.0;
            err = b * std::abs(c[k - 1]);
            return c;
        };

        for (int j = 0; j < m_max; ++j) {
            h(v[static_cast<std::size_t>(j)].data(), w.data());
            ++stats.matvecs;
            // Two passes of classical Gram-Schmidt against the full basis.
            double a = 0.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= j; ++i) {
                    const Complex c = kernels::dot(v[static_cast<std::size_t>(i)], w);
                    kernels::axpy(-c, v[static_cast<std::size_t>(i)], w);
                    if (i == j) {
                        a += c.real();
                    }
                }
            }
            alpha.push_back(a);
            const double b = std::sqrt(kernels::norm2(w));
            beta.push_back(b);
            m = j + 1;
            const bool breakdown = b < 1e-13 * (std::abs(a) + 1.0);
            if (breakdown) {
                beta.back() = 0.0;
            } else if (j + 1 < m_max) {
                std::copy(w.begin(), w.end(), v[static_cast<std::size_t>(j) + 1].begin());
                kernels::scale(1.0 / b, v[static_cast<std::size_t>(j) + 1]);
            }
            double err = 0.0;
            const double budget = options.tol * (dt / total);
            coeff = small_exp(m, dt, err);
            if (breakdown || err <= budget) {
                accepted = true;
                break;
            }
        }
        while (!accepted) {
            dt *= 0.5;
            double err = 0.0;
            coeff = small_exp(m, dt, err);
            accepted = err <= options.tol * (dt / total);
            if (dt < total * 1e-12) {
                throw NumericError("Krylov step size underflow");
            }
        }
        std::fill(psi, psi + dim, Complex(0.0));
        std::span<Complex> out(psi, dim);
        for (int i = 0; i < m; ++i) {
            kernels::axpy(beta0 * coeff[i], v[static_cast<std::size_t>(i)], out);
        }
        done += dt;
        ++stats.substeps;
    }
    return stats;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix embed_1q(const CMatrix2 &u, std::size_t qubit, std::size_t n) {
    const Eigen::Index lo = Eigen::Index{1} << qubit;
    const Eigen::Index hi = Eigen::Index{1} << (n - qubit - 1);
    return kron(kron(CMatrix::Identity(hi, hi), u), CMatrix::Identity(lo, lo));
}

} // namespace rydqca::linalg
