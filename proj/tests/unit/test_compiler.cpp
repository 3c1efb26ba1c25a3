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
#include <cmath>
#include <random>

#include "doctest.h"
#include "rydqca/compiler.hpp"
#include "rydqca/errors.hpp"
#include "rydqca/linalg.hpp"

using namespace rydqca;
using namespace rydqca::compiler;

namespace {

lattice::LatticeSpec chain(int n, lattice::Boundary b = lattice::Boundary::Open) {
    lattice::LatticeSpec s;
    s.family = lattice::Family::Chain;
    s.extent = {n};
    s.boundary = b;
    return s;
}

lattice::LatticeSpec hexagon() {
    lattice::LatticeSpec s;
    s.family = lattice::Family::Honeycomb;
    s.extent = {2, 2};
    s.trim_dangling = true;
    return s;
}

QcaModel kicked_ising(int n, double tau = 0.7) {
    QcaModel m;
    m.params = KickedIsing{1.0, 1.2, 0.8};
    m.tau = tau;
    m.lattice = chain(n);
    return m;
}

// Global-phase-insensitive distance.
double phase_distance(const CMatrix &a, const CMatrix &b) {
    const Complex ov = (a.adjoint() * b).trace();
    const Complex ph = ov / std::abs(ov);
    return (a * ph - b).norm();
}

// Time-ordered product of layer exponentials.
CMatrix oracle_step(const QcaModel &m) {
    const std::size_t n = lattice::build_graph(m.lattice).size();
    const auto dim = Eigen::Index{1} << n;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (const auto &l : model_layers(m)) {
        u = linalg::expm_hermitian(layer_hamiltonian(l, n).to_matrix(), m.tau) * u;
    }
    return u;
}

Eigen::Matrix4cd two_qubit(const CMatrix2 &a, const CMatrix2 &b) {
    return linalg::kron(b, a); // a on qubit 0
}

} // namespace

TEST_SUITE("compiler") {

TEST_CASE("CZ rewriting identity up to the global phase e^{-i phi/4}") {
    const CMatrix2 z = pauli_matrix::z();
    const Eigen::Matrix4cd zz = linalg::kron(z, z);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int k = 0; k < 20; ++k) {
        const double phi = u(rng);
        const Eigen::Matrix4cd rhs =
            two_qubit(pauli_rotation(z, phi / 4), pauli_rotation(z, phi / 4)) *
            linalg::expm_hermitian(zz, -phi / 4);
        CHECK((cz_matrix(phi) - std::exp(Complex(0.0, phi / 4)) * rhs).norm() < 1e-13);
    }
}

TEST_CASE("basis rotations map Z to each Pauli") {
    for (int a = 0; a < 3; ++a) {
        const CMatrix2 r = basis_rotation(a);
        CHECK((r.adjoint() * pauli_matrix::z() * r - pauli_matrix::by_index(a + 1)).norm() < 1e-14);
    }
}

TEST_CASE("conjugated CZ realizes exp(i phi s^a s^a)") {
    for (int a = 0; a < 3; ++a) {
        const CMatrix2 r = basis_rotation(a);
        const CMatrix2 s = pauli_matrix::by_index(a + 1);
        for (double phi : {0.3, -1.1, 2.0}) {
            const CMatrix2 zr = pauli_rotation(pauli_matrix::z(), -phi); // e^{+i phi Z}
            const Eigen::Matrix4cd lhs = two_qubit(r.adjoint(), r.adjoint()) * cz_matrix(4 * phi) *
                                         two_qubit(zr, zr) * two_qubit(r, r);
            const Eigen::Matrix4cd rhs = linalg::expm_hermitian(linalg::kron(s, s), -phi);
            CHECK(phase_distance(lhs, rhs) < 1e-13);
        }
    }
}

TEST_CASE("ideal step unitary equals the layer-exponential oracle") {
    QcaModel ki = kicked_ising(4);
    CHECK((ideal_step_unitary(ki) - oracle_step(ki)).norm() < 1e-12);

    QcaModel kt;
    kt.params = KitaevFloquet{{0.3, 0.5, 0.7}, {0.1, -0.2, 0.3}};
    kt.lattice = hexagon();
    CHECK((ideal_step_unitary(kt) - oracle_step(kt)).norm() < 1e-12);

    QcaModel tl;
    tl.params = TwoLocal{{0.4, -0.3, 0.9}, {0.2, 0.5, -0.1}};
    tl.tau = 0.3;
    tl.lattice = chain(4);
    CHECK((ideal_step_unitary(tl) - oracle_step(tl)).norm() < 1e-12);
}

TEST_CASE("state-vector step operator matches the dense unitary") {
    QcaModel kt;
    kt.params = KitaevFloquet{{0.3, 0.5, 0.7}, {0.1, -0.2, 0.3}};
    kt.lattice = hexagon();
    const StepOperator step(kt);
    const CMatrix u = ideal_step_unitary(kt);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> d;
    CVector psi(64);
    for (auto &x : psi) {
        x = Complex(d(rng), d(rng));
    }
    const Eigen::VectorXcd expect = u * Eigen::Map<Eigen::VectorXcd>(psi.data(), 64);
    step.apply(psi);
    CHECK((Eigen::Map<Eigen::VectorXcd>(psi.data(), 64) - expect).norm() < 1e-12);
}

TEST_CASE("gate circuit of one step equals the ideal step") {
    for (const QcaModel &m : {kicked_ising(4), [] {
             QcaModel t;
             t.params = TwoLocal{{0.4, -0.3, 0.9}, {0.2, 0.5, -0.1}};
             t.tau = 0.3;
             t.lattice = chain(3);
             return t;
         }()}) {
        const auto arr = lattice::build_array(m.lattice, default_assignment(m));
        GateCircuit c;
        c.n_qubits = arr.n_data;
        for (const auto &st : merge_stages(step_stages(m, arr), arr.n_data)) {
            std::vector<Gate> layer;
            if (const auto *d = std::get_if<DataStage>(&st)) {
                for (std::size_t i = 0; i < d->unitaries.size(); ++i) {
                    layer.push_back(SingleQubitGate{d->unitaries[i], i});
                }
            } else {
                for (const auto &g : arr.gadgets) {
                    layer.push_back(CzGate{std::get<GadgetStage>(st).phases.at(1), g.data_a, g.data_b});
                }
            }
            c.layers.push_back(layer);
        }
        CHECK_NOTHROW(c.validate(lattice::build_graph(m.lattice)));
        CHECK(phase_distance(circuit_unitary(c), ideal_step_unitary(m)) < 1e-12);
    }
}

TEST_CASE("kicked Ising compiles to two segments per step") {
    const auto r = compile(kicked_ising(4));
    CHECK(r.segments_per_step == 2);
    CHECK(r.ancilla_pulses_per_step == 1);
    CHECK(r.gadget_pulses.at(0).method == "closed-form");
    for (int reps : {1, 3}) {
        const auto v = verify(r, reps);
        CHECK(v.fidelity >= 1.0 - 1e-8);
        CHECK_FALSE(v.leakage_failure);
    }
}

TEST_CASE("physical mode needs uniform single-qubit layers") {
    CompileOptions o;
    o.physical = true;
    CHECK_THROWS_AS(compile(kicked_ising(4), o), ConfigError);
    QcaModel ring = kicked_ising(4);
    ring.lattice = chain(4, lattice::Boundary::Periodic);
    const auto r = compile(ring, o);
    const auto v = verify(r, 2);
    CHECK(v.fidelity >= 1.0 - 1e-8);
    CHECK(r.program.count(pxp::Species::Data) >= 1);
}

TEST_CASE("two-local random couplings compile with high fidelity") {
    QcaModel m;
    m.params = TwoLocal{{0.4, -0.3, 0.9}, {0.2, 0.5, -0.1}};
    m.tau = 0.3;
    m.lattice = chain(4);
    const auto v = verify(compile(m), 1);
    CHECK(v.fidelity >= 1.0 - 1e-6);
}

TEST_CASE("merge drops trivial stages and fuses data layers") {
    DataStage a{{pauli_matrix::x(), pauli_matrix::z()}};
    DataStage b{{pauli_matrix::x(), pauli_matrix::z()}};
    GadgetStage zero{{{1, 2.0 * kPi}}};
    const auto merged = merge_stages({a, zero, b}, 2);
    CHECK(merged.empty());
    GadgetStage g{{{1, 0.5}}};
    const auto kept = merge_stages({a, g, b}, 2);
    CHECK(kept.size() == 3);
}

TEST_CASE("model validation") {
    QcaModel m;
    m.params = KitaevFloquet{};
    m.lattice = chain(4);
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m.params = InhomKickedIsing{};
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m.params = KickedIsing{std::nan(""), 0, 0};
    CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("Floquet effective Hamiltonian has a second-order residual") {
    QcaModel m;
    m.params = TwoLocal{{0.4, -0.3, 0.9}, {0.2, 0.5, -0.1}};
    m.lattice = chain(3);
    std::vector<double> err;
    for (double tau : {0.02, 0.01}) {
        m.tau = tau;
        const auto eh = floquet_effective_h(m);
        const CMatrix h_exact = Complex(0.0, 1.0 / tau) * linalg::logm_unitary(ideal_step_unitary(m));
        err.push_back(linalg::operator_norm(h_exact - eh.h_sum - eh.correction));
        CHECK(linalg::operator_norm(h_exact - eh.h_sum) > err.back());
    }
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("Kitaev light cone grows as 8, 28, 60") {
    QcaModel m;
    m.params = KitaevFloquet{{1, 1, 1}, {0, 0, 0}};
    m.lattice.family = lattice::Family::Honeycomb;
    m.lattice.extent = {8, 8};
    const std::size_t site = 2 * (4 * 8 + 4);
    CHECK(light_cone(m, site, 1).size() == 8);
    CHECK(light_cone(m, site, 2).size() == 28);
    CHECK(light_cone(m, site, 3).size() == 60);
}

TEST_CASE("dense caps raise resource errors") {
    QcaModel big = kicked_ising(13);
    CHECK_THROWS_AS(ideal_step_unitary(big), ResourceError);
    CHECK_THROWS_AS(floquet_effective_h(kicked_ising(11)), ResourceError);
}

}
