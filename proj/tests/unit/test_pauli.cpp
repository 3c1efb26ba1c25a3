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
#include <random>

#include "doctest.h"
#include "rydqca/errors.hpp"
#include "rydqca/linalg.hpp"
#include "rydqca/pauli.hpp"

using namespace rydqca;
using namespace rydqca::pauli;

namespace {

PauliString random_string(std::size_t n, std::mt19937_64 &rng) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += "IXYZ"[rng() % 4];
    }
    return PauliString::from_string(s);
}

CMatrix dense_letters(const std::string &letters) {
    CMatrix m = CMatrix::Identity(1, 1);
    for (char c : letters) {
        const int a = c == 'X' ? 1 : c == 'Y' ? 2 : c == 'Z' ? 3 : 0;
        m = linalg::kron(CMatrix(pauli_matrix::by_index(a)), m);
    }
    return m;
}

} // namespace

TEST_SUITE("pauli") {

TEST_CASE("letters map to the project Pauli matrices, site i = bit i") {
    CHECK((to_matrix(PauliString::from_string("Y")) - CMatrix(pauli_matrix::y())).norm() < 1e-15);
    CHECK((to_matrix(PauliString::from_string("XZY")) - dense_letters("XZY")).norm() < 1e-15);
}

TEST_CASE("product and commutation agree with matrices") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_string(3, rng);
        const auto q = random_string(3, rng);
        const CMatrix mp = to_matrix(p), mq = to_matrix(q);
        CHECK((to_matrix(p * q) - mp * mq).norm() < 1e-13);
        CHECK(p.commutes_with(q) == ((mp * mq - mq * mp).norm() < 1e-12));
    }
}

TEST_CASE("state action and expectation") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> d;
    CVector psi(16);
    for (auto &x : psi) {
        x = Complex(d(rng), d(rng));
    }
    const Eigen::Map<Eigen::VectorXcd> v(psi.data(), 16);
    for (int k = 0; k < 20; ++k) {
        const auto p = random_string(4, rng);
        CVector out(16);
        apply(p, psi.data(), out.data(), 16);
        const Eigen::VectorXcd expect = to_matrix(p) * v;
        CHECK((Eigen::Map<Eigen::VectorXcd>(out.data(), 16) - expect).norm() < 1e-12);
        CHECK(std::abs(expectation(p, psi) - v.dot(expect)) < 1e-11);
    }
}

TEST_CASE("string round trip, weight and support") {
    const auto p = PauliString::from_string("XIYZ");
    CHECK(p.to_string() == "+XIYZ");
    CHECK(p.weight() == 3);
    CHECK(p.support() == std::vector<std::size_t>{0, 2, 3});
    auto q = p;
    q.multiply_phase(1);
    CHECK(q.to_string() == "+iXIYZ");
    CHECK_FALSE(q == p);
}

TEST_CASE("Clifford conjugation equals dense conjugation") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        auto o = random_string(3, rng);
        const auto p = random_string(3, rng);
        const double theta = (static_cast<int>(rng() % 8) - 4) * kPi / 4.0;
        const CMatrix mp = to_matrix(p);
        const CMatrix u = (std::cos(theta) * CMatrix::Identity(8, 8) + Complex(0.0, std::sin(theta)) * mp);
        const CMatrix expect = u * to_matrix(o) * u.adjoint();
        conjugate_by_rotation(o, p, theta);
        CHECK((to_matrix(o) - expect).norm() < 1e-12);
    }
}

TEST_CASE("non-Clifford angle is a domain error") {
    auto o = PauliString::from_string("X");
    CHECK_THROWS_AS(conjugate_by_rotation(o, PauliString::from_string("Z"), 0.3), DomainError);
    CHECK(is_clifford_angle(3 * kPi / 4));
    CHECK_FALSE(is_clifford_angle(0.1));
}

TEST_CASE("long strings beyond one machine word") {
    PauliString a(130), b(130);
    a.set(129, 'X');
    b.set(129, 'Z');
    b.set(3, 'Y');
    CHECK_FALSE(a.commutes_with(b));
    CHECK((a * b).weight() == 2);
    CHECK((a * b).at(129) == 'Y');
}

}
