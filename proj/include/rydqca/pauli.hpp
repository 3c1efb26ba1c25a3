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
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydqca/types.hpp"

namespace rydqca::pauli {

/// P = i^k prod_j X_j^{x_j} Z_j^{z_j}. Letter Y on a site stands for
/// i X Z, so "Y" is stored as x=z=1 with one unit of phase.
class PauliString {
public:
    explicit PauliString(std::size_t n = 0);

    static PauliString from_string(std::string_view letters);
    static PauliString single(std::size_t n, std::size_t site, char letter);

    std::size_t size() const { return n_; }
    char at(std::size_t site) const;
    void set(std::size_t site, char letter);
    bool x(std::size_t site) const { return (xs_[site / 64] >> (site % 64)) & 1U; }
    bool z(std::size_t site) const { return (zs_[site / 64] >> (site % 64)) & 1U; }

    /// Exponent k in i^k relative to the plain X^x Z^z product.
    int phase() const { return phase_; }
    /// Exponent relative to the letter form (product of the printed letters).
    int letter_phase() const;

    std::size_t weight() const;
    std::vector<std::size_t> support() const;
    bool commutes_with(const PauliString &other) const;
    bool is_identity() const { return weight() == 0; }
    PauliString operator*(const PauliString &rhs) const;
    void multiply_phase(int k) { phase_ = (phase_ + k) & 3; }

    /// "+XIZ", "-iY", ...
    std::string to_string() const;
    bool operator==(const PauliString &o) const;

    /// Low 64 sites only (state-vector action requires n <= 63).
    std::uint64_t x_mask() const { return xs_.empty() ? 0 : xs_[0]; }
    std::uint64_t z_mask() const { return zs_.empty() ? 0 : zs_[0]; }
    /// P|j> = coefficient(j) |j ^ x_mask>
    Complex coefficient(std::uint64_t j) const;

private:
    std::size_t n_;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    int phase_ = 0;
};

/// out = P in on a 2^n state vector.
void apply(const PauliString &p, const Complex *in, Complex *out, std::size_t dim);
CMatrix to_matrix(const PauliString &p);
/// <psi|P|psi>
Complex expectation(const PauliString &p, const CVector &psi);

struct PauliSum {
    std::size_t n = 0;
    std::vector<std::pair<Complex, PauliString>> terms;

    void add(Complex c, PauliString p) { terms.emplace_back(c, std::move(p)); }
    CMatrix to_matrix() const;
};

/// O <- exp(i theta P) O exp(-i theta P) for theta a multiple of pi/4.
/// Throws DomainError otherwise.
void conjugate_by_rotation(PauliString &o, const PauliString &p, double theta);

/// True when theta is an integer multiple of pi/4 (within 1e-9).
bool is_clifford_angle(double theta);

} // namespace rydqca::pauli
