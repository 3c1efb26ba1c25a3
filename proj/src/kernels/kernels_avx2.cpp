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
// AVX2 + FMA variants. Each __m256d register holds two complex<double>
// values laid out as [re0, im0, re1, im1]. Tails that do not fill a register
// fall back to the scalar formulas.

#include <immintrin.h>

#include "rydqca/kernels/kernels.hpp"

namespace rydqca::kernels {
namespace {

inline __m256d load2(const Complex *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}
inline void store2(Complex *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}
/// Broadcast one complex scalar into both lanes.
inline __m256d bcast(Complex c) {
    return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
}
/// Lane-wise complex product c * v.
inline __m256d cmul(__m256d c, __m256d v) {
    const __m256d cr = _mm256_movedup_pd(c);
    const __m256d ci = _mm256_permute_pd(c, 0b1111);
    const __m256d vs = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(cr, v, _mm256_mul_pd(ci, vs));
}
inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void apply_1q_avx2(Complex *psi, std::size_t dim, std::size_t stride,
                   const Complex *m) {
    if (stride == 1) {
        // Pair (2k, 2k+1) fits one register: out = [m00 m11]*v + [m01 m10]*swap(v)
        const __m256d diag = _mm256_setr_pd(m[0].real(), m[0].imag(),
                                            m[3].real(), m[3].imag());
        const __m256d off = _mm256_setr_pd(m[1].real(), m[1].imag(),
                                           m[2].real(), m[2].imag());
        for (std::size_t i = 0; i + 1 < dim; i += 2) {
            const __m256d v = load2(psi + i);
            const __m256d vs = _mm256_permute2f128_pd(v, v, 0x01);
            store2(psi + i, _mm256_add_pd(cmul(diag, v), cmul(off, vs)));
        }
        return;
    }
    const __m256d m00 = bcast(m[0]);
    const __m256d m01 = bcast(m[1]);
    const __m256d m10 = bcast(m[2]);
    const __m256d m11 = bcast(m[3]);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; j += 2) {
            Complex *p0 = psi + base + j;
            Complex *p1 = p0 + stride;
            const __m256d v0 = load2(p0);
            const __m256d v1 = load2(p1);
            store2(p0, _mm256_add_pd(cmul(m00, v0), cmul(m01, v1)));
            store2(p1, _mm256_add_pd(cmul(m10, v0), cmul(m11, v1)));
        }
    }
}

void apply_diagonal_avx2(Complex *psi, const Complex *diag, std::size_t n) {
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        store2(psi + i, cmul(load2(diag + i), load2(psi + i)));
    }
    for (; i < n; ++i) {
        psi[i] *= diag[i];
    }
}

void axpy_avx2(Complex a, const Complex *x, Complex *y, std::size_t n) {
    const __m256d av = bcast(a);
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        store2(y + i, _mm256_add_pd(load2(y + i), cmul(av, load2(x + i))));
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

void scale_avx2(Complex a, Complex *x, std::size_t n) {
    const __m256d av = bcast(a);
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        store2(x + i, cmul(av, load2(x + i)));
    }
    for (; i < n; ++i) {
        x[i] *= a;
    }
}

Complex dot_avx2(const Complex *a, const Complex *b, std::size_t n) {
    // re accumulates [ar*br, ai*bi], im accumulates [ar*bi, ai*br]
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        re = _mm256_fmadd_pd(va, vb, re);
        im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), im);
    }
    alignas(32) double r[4];
    alignas(32) double s[4];
    _mm256_store_pd(r, re);
    _mm256_store_pd(s, im);
    double sr = (r[0] + r[2]) + (r[1] + r[3]);
    double si = (s[0] + s[2]) - (s[1] + s[3]);
    for (; i < n; ++i) {
        sr += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        si += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {sr, si};
}

double norm2_avx2(const Complex *a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        const __m256d v = load2(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        s += std::norm(a[i]);
    }
    return s;
}

double expval_x_avx2(const Complex *psi, std::size_t dim, std::size_t stride) {
    if (stride == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < dim; i += 2) {
            s += psi[i].real() * psi[i + 1].real() +
                 psi[i].imag() * psi[i + 1].imag();
        }
        return 2.0 * s;
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; j += 2) {
            const Complex *p0 = psi + base + j;
            acc = _mm256_fmadd_pd(load2(p0), load2(p0 + stride), acc);
        }
    }
    return 2.0 * hsum(acc);
}

double expval_z_avx2(const Complex *psi, std::size_t dim, std::size_t stride) {
    if (stride == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < dim; i += 2) {
            s += std::norm(psi[i + 1]) - std::norm(psi[i]);
        }
        return s;
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; j += 2) {
            const Complex *p0 = psi + base + j;
            const __m256d v0 = load2(p0);
            const __m256d v1 = load2(p0 + stride);
            acc = _mm256_fmadd_pd(v1, v1, acc);
            acc = _mm256_fnmadd_pd(v0, v0, acc);
        }
    }
    return hsum(acc);
}

} // namespace

const KernelTable *avx2_table() {
    static const KernelTable table{
        "avx2",          Backend::Avx2,     apply_1q_avx2,
        apply_diagonal_avx2, axpy_avx2,     scale_avx2,
        dot_avx2,        norm2_avx2,        expval_x_avx2,
        expval_z_avx2};
    return &table;
}

} // namespace rydqca::kernels
