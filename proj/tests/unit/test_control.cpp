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
#include "rydqca/control.hpp"
#include "rydqca/errors.hpp"

using namespace rydqca;
using namespace rydqca::control;

namespace {

lattice::AtomArray pair_with_gadget(int s) {
    lattice::LatticeSpec spec;
    spec.family = lattice::Family::Chain;
    spec.extent = {2};
    return lattice::build_array(spec, lattice::GadgetAssignment::uniform(lattice::Family::Chain, s));
}

double fd_max_diff(const GrapeProblem &p, const RVector &xi) {
    const RVector g = grape_gradient(p, xi);
    double m = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        RVector a = xi, b = xi;
        a[i] += 1e-6;
        b[i] -= 1e-6;
        m = std::max(m, std::abs((grape_error(p, a) - grape_error(p, b)) / 2e-6 - g[i]));
    }
    return m;
}

} // namespace

TEST_SUITE("control") {

TEST_CASE("closed-form duration and detuning") {
    const auto p = cz_pulse_params(kPi, 1, 1.0);
    CHECK(p.t_f == doctest::Approx(2.0 * kPi));
    CHECK(p.delta == doctest::Approx(0.0));
    const auto q = cz_pulse_params(kPi / 2, 3, 2.0);
    CHECK(q.t_f == doctest::Approx(2.0 / (std::sqrt(3.0) * 2.0) * std::sqrt(kPi * kPi - kPi * kPi / 4)));
    CHECK_THROWS_AS(cz_pulse_params(0.0, 1, 1.0), DomainError);
    CHECK_THROWS_AS(cz_pulse_params(7.0, 1, 1.0), DomainError);
}

TEST_CASE("closed-form pulse imprints phi on the gg branch only") {
    for (int s : {1, 2}) {
        const auto arr = pair_with_gadget(s);
        const pxp::Engine e(arr);
        const double phi = 1.1;
        pxp::PulseProgram prog{arr.size(), {cz_pulse_segment(cz_pulse_params(phi, s, 1.0))}};
        CVector d(4, Complex(0.5));
        const auto r = e.run_program(pxp::embed_data_state(e.basis(), 2, d), prog);
        const CVector out = pxp::project_data_state(r.state, 2);
        CHECK(std::abs(out[0] - 0.5 * std::exp(Complex(0.0, phi))) < 1e-10);
        for (int j = 1; j < 4; ++j) {
            CHECK(std::abs(out[j] - 0.5) < 1e-12);
        }
        CHECK(pxp::ancilla_return_check(r.state) < 1e-10);
    }
}

TEST_CASE("analytic gradient matches central differences") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (const std::vector<int> &sizes : {std::vector<int>{1}, {1, 2}, {1, 2, 3}}) {
        for (int k = 0; k < 20; ++k) {
            GrapeProblem p;
            p.sizes = sizes;
            for (std::size_t s = 0; s < sizes.size(); ++s) {
                p.target_phases.push_back(u(rng));
            }
            p.T = 4.0 + 12.0 * (u(rng) / (2 * kPi));
            p.M = 100;
            CHECK(fd_max_diff(p, random_phases(p.M, 1000 + k)) < 1e-6);
        }
    }
}

TEST_CASE("mirror symmetry xi -> pi - xi flips the target phases") {
    GrapeProblem p;
    p.sizes = {1, 2, 3};
    p.target_phases = {0.3, 2.0, -1.2};
    p.T = 9.0;
    GrapeProblem n = p;
    for (auto &x : n.target_phases) {
        x = -x;
    }
    const RVector xi = random_phases(p.M, 9);
    CHECK(grape_error(p, xi) == doctest::Approx(grape_error(n, mirror_phases(xi))).epsilon(1e-13));
}

TEST_CASE("resonant cycle is optimal for a single size at phi = pi") {
    GrapeProblem p;
    p.sizes = {1};
    p.target_phases = {kPi};
    p.T = 2.0 * kPi;
    p.M = 40;
    RVector zero(static_cast<std::size_t>(p.M), 0.0);
    CHECK(grape_error(p, zero) < 1e-24);

    std::vector<double> grid;
    for (double t = 8.0; t > 1.0; t -= 0.25) {
        grid.push_back(t);
    }
    ScanOptions o;
    o.restarts = 2;
    const auto r = time_optimal_scan(p, grid, o);
    CHECK(r.feasible);
    CHECK(r.t_min == doctest::Approx(2.0 * kPi).epsilon(2e-3));
    CHECK(r.error_at_t_min < 1.01e-10);
}

TEST_CASE("optimized gradient is stationary") {
    GrapeProblem p;
    p.sizes = {1, 2};
    p.target_phases = {1.0, 0.0};
    p.T = 14.0;
    const auto r = grape_optimize(p);
    CHECK(r.error < 1e-10);
    double n = 0.0;
    for (double g : grape_gradient(p, r.xi)) {
        n += g * g;
    }
    CHECK(std::sqrt(n) < 1e-6);
}

TEST_CASE("scan rejects bad grids") {
    GrapeProblem p;
    p.sizes = {1};
    p.target_phases = {1.0};
    CHECK_THROWS_AS(time_optimal_scan(p, {}), ConfigError);
    CHECK_THROWS_AS(time_optimal_scan(p, {1.0, 2.0}), ConfigError);
}

TEST_CASE("problem validation") {
    GrapeProblem p;
    p.sizes = {1, 1};
    p.target_phases = {0.0, 0.0};
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.sizes = {1};
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("controllability certificate") {
    const auto c = controllability_check({1, 2, 3}, 1.0);
    CHECK(c.lie_dimension == 9);
    CHECK(c.target_dimension == 9);
    CHECK(c.controllable);
    CHECK(c.vandermonde_det != 0.0);
    CHECK(c.vandermonde_det == doctest::Approx(c.vandermonde_det_lu).epsilon(1e-10));
    const auto d = controllability_check({2, 2}, 1.0);
    CHECK_FALSE(d.controllable);
    CHECK(d.lie_dimension < d.target_dimension);
    CHECK(std::abs(d.vandermonde_det) < 1e-14);
}

TEST_CASE("single-qubit pulses reproduce the unitary in the blockaded engine") {
    const auto arr = pair_with_gadget(1);
    const pxp::Engine e(arr);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    std::vector<CMatrix2> cases{pauli_rotation(pauli_matrix::z(), 0.7), CMatrix2::Identity(),
                                pauli_rotation(pauli_matrix::x(), kPi / 2)};
    for (int k = 0; k < 5; ++k) {
        const double a = nd(rng), b = nd(rng), c = nd(rng);
        cases.push_back(pauli_rotation(pauli_matrix::z(), a) * pauli_rotation(pauli_matrix::y(), b) *
                        pauli_rotation(pauli_matrix::z(), c));
    }
    for (const auto &u : cases) {
        pxp::PulseProgram prog;
        prog.n_atoms = arr.size();
        for (auto &s : single_qubit_pulses(u, 1.0, pxp::Species::Data, {1})) {
            prog.segments.emplace_back(s);
        }
        CMatrix2 got;
        for (int col = 0; col < 2; ++col) {
            CVector d(4, Complex(0.0));
            d[static_cast<std::size_t>(col)] = 1.0;
            const auto out = pxp::project_data_state(e.run_program(pxp::embed_data_state(e.basis(), 2, d), prog).state, 2);
            got(0, col) = out[0];
            got(1, col) = out[1];
        }
        const Complex ph = (u.adjoint() * got).trace() / 2.0;
        CHECK(std::abs(std::abs(ph) - 1.0) < 1e-10);
        CHECK((got - ph * u).norm() < 1e-10);
    }
}

}
