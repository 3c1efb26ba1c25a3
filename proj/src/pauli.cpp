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
#include "rydqca/pauli.hpp"

#include <bit>
#include <cmath>

#include "rydqca/errors.hpp"

namespace rydqca::pauli {
namespace {

std::size_t words(std::size_t n) { return (n + 63) / 64; }

const Complex kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

} // namespace

PauliString::PauliString(std::size_t n) : n_(n), xs_(words(n), 0), zs_(words(n), 0) {}

PauliString PauliString::from_string(std::string_view letters) {
    PauliString p(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) {
        p.set(i, letters[i]);
    }
    return p;
}

PauliString PauliString::single(std::size_t n, std::size_t site, char letter) {
    if (site >= n) {
        throw DomainError("Pauli site out of range");
    }
    PauliString p(n);
    p.set(site, letter);
    return p;
}

char PauliString::at(std::size_t site) const {
    const bool xb = x(site), zb = z(site);
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

void PauliString::set(std::size_t site, char letter) {
    if (site >= n_) {
        throw DomainError("Pauli site out of range");
    }
    // Remove the old letter together with its phase contribution.
    if (at(site) == 'Y') {
        phase_ = (phase_ + 3) & 3;
    }
    const std::uint64_t m = std::uint64_t{1} << (site % 64);
    xs_[site / 64] &= ~m;
    zs_[site / 64] &= ~m;
    switch (letter) {
    case 'I':
    case 'i':
        break;
    case 'X':
    case 'x':
        xs_[site / 64] |= m;
        break;
    case 'Z':
    case 'z':
        zs_[site / 64] |= m;
        break;
    case 'Y':
    case 'y':
        xs_[site / 64] |= m;
        zs_[site / 64] |= m;
        phase_ = (phase_ + 1) & 3;
        break;
    default:
        throw DomainError(std::string("unknown Pauli letter '") + letter + "'");
    }
}

int PauliString::letter_phase() const {
    std::size_t ny = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        ny += static_cast<std::size_t>(std::popcount(xs_[w] & zs_[w]));
    }
    return static_cast<int>((static_cast<std::size_t>(phase_) + 4 - ny % 4) & 3);
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        w += static_cast<std::size_t>(std::popcount(xs_[i] | zs_[i]));
    }
    return w;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n_; ++i) {
        if (x(i) || z(i)) {
            s.push_back(i);
        }
    }
    return s;
}

bool PauliString::commutes_with(const PauliString &o) const {
    if (o.n_ != n_) {
        throw DomainError("Pauli strings of different length");
    }
    std::size_t c = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        c += static_cast<std::size_t>(std::popcount((xs_[i] & o.zs_[i]) ^ (zs_[i] & o.xs_[i])));
    }
    return (c & 1U) == 0;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    if (rhs.n_ != n_) {
        throw DomainError("Pauli strings of different length");
    }
    // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}
    PauliString out(n_);
    std::size_t sign = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        sign += static_cast<std::size_t>(std::popcount(zs_[i] & rhs.xs_[i]));
        out.xs_[i] = xs_[i] ^ rhs.xs_[i];
        out.zs_[i] = zs_[i] ^ rhs.zs_[i];
    }
    out.phase_ = static_cast<int>((static_cast<std::size_t>(phase_ + rhs.phase_) + 2 * (sign & 1U)) & 3);
    return out;
}

std::string PauliString::to_string() const {
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[letter_phase()];
    for (std::size_t i = 0; i < n_; ++i) {
        s.push_back(at(i));
    }
    return s;
}

bool PauliString::operator==(const PauliString &o) const {
    return n_ == o.n_ && phase_ == o.phase_ && xs_ == o.xs_ && zs_ == o.zs_;
}

Complex PauliString::coefficient(std::uint64_t j) const {
    // Z|b> = (2b - 1)|b>: a minus sign for every Z-site holding |g>.
    const std::uint64_t zm = z_mask();
    const int minus = std::popcount(zm & ~j) & 1;
    const Complex c = kIPow[phase_];
    return minus ? -c : c;
}

void apply(const PauliString &p, const Complex *in, Complex *out, std::size_t dim) {
    if (p.size() > 63 || (std::size_t{1} << p.size()) != dim) {
        throw DomainError("Pauli string does not match the state dimension");
    }
    const std::uint64_t xm = p.x_mask();
    for (std::size_t j = 0; j < dim; ++j) {
        out[j ^ xm] = p.coefficient(j) * in[j];
    }
}

CMatrix to_matrix(const PauliString &p) {
    const std::size_t dim = std::size_t{1} << p.size();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const std::uint64_t xm = p.x_mask();
    for (std::size_t j = 0; j < dim; ++j) {
        m(static_cast<Eigen::Index>(j ^ xm), static_cast<Eigen::Index>(j)) = p.coefficient(j);
    }
    return m;
}

Complex expectation(const PauliString &p, const CVector &psi) {
    const std::uint64_t xm = p.x_mask();
    Complex acc = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        acc += std::conj(psi[j ^ xm]) * p.coefficient(j) * psi[j];
    }
    return acc;
}

CMatrix PauliSum::to_matrix() const {
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto &[c, p] : terms) {
        const std::uint64_t xm = p.x_mask();
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^ xm), j) +=
                c * p.coefficient(static_cast<std::uint64_t>(j));
        }
    }
    return m;
}

bool is_clifford_angle(double theta) {
    const double q = theta / (kPi / 4.0);
    return std::abs(q - std::round(q)) < 1e-9;
}

void conjugate_by_rotation(PauliString &o, const PauliString &p, double theta) {
    if (!is_clifford_angle(theta)) {
        throw DomainError("rotation angle " + std::to_string(theta) +
                          " is not a multiple of pi/4");
    }
    if (o.commutes_with(p)) {
        return;
    }
    // Anticommuting: e^{i t P} O e^{-i t P} = (cos 2t + i sin 2t P) O.
    const long q = std::lround(theta / (kPi / 4.0));
    switch (((q % 4) + 4) % 4) {
    case 0:
        return;
    case 1:
        o = p * o;
        o.multiply_phase(1);
        return;
    case 2:
        o.multiply_phase(2);
        return;
    default:
        o = p * o;
        o.multiply_phase(3);
        return;
    }
}

} // namespace rydqca::pauli
