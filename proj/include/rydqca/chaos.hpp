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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rydqca/compiler.hpp"
#include "rydqca/lattice.hpp"
#include "rydqca/pauli.hpp"
#include "rydqca/pxp_engine.hpp"
#include "rydqca/types.hpp"

namespace rydqca::chaos {

using Vector2 = Eigen::Vector2cd;

/// Tetrahedral state |mu_k>, k = 1..4.
Vector2 tetra_state(int k);
/// Bloch vector of |mu_k> under sigma^Z = diag(-1, 1).
std::array<double, 3> tetra_bloch(int k);
/// SU(2) matrix with U_k |g> = |mu_k>.
CMatrix2 tetra_unitary(int k);

struct Coloring {
    std::vector<int> colors; // 1..4 per data site
    std::uint64_t seed = 0;
};

Coloring random_coloring(std::size_t n, std::uint64_t seed);
/// Product of |mu_{color(i)}> with qubit i = bit i.
CVector product_state(const Coloring &coloring);

struct InitialState {
    Coloring coloring;
    CVector state;
};

InitialState sample_initial_state(std::size_t n, std::uint64_t seed);

/// Uniform Pauli observable: the same letter on every listed site.
struct Observable {
    char letter = 'X';
    std::vector<std::size_t> sites;

    void validate(std::size_t n) const;
    pauli::PauliString to_pauli(std::size_t n) const;
    std::string to_string() const;
};

double expectation(const Observable &o, const CVector &psi);

struct GOptions {
    int t_max = 0;
    std::size_t samples = 1000;
    std::size_t batches = 10;
    std::uint64_t seed = 1;
    std::optional<int> shots;
    std::size_t threads = 0;
    bool keep_values = false;
};

struct GEstimate {
    std::vector<int> times;
    std::vector<double> g;
    std::vector<double> uncertainty;
    std::vector<double> mean;
    std::size_t samples = 0;
    std::size_t batches = 0;
    /// values[t][sample] when keep_values is set.
    std::vector<std::vector<double>> values;
};

inline constexpr std::size_t kSampleQubitCap = 20;

GEstimate estimate_g(const compiler::QcaModel &model, const Observable &o,
                     const GOptions &options);

/// Unbiased estimate of <O>^2 from the mean of m +-1 outcomes.
double squared_mean_estimate(double shot_mean, int m);

struct SizeDistribution {
    std::vector<double> p;

    double total() const;
    double g() const;
};

inline constexpr std::size_t kExactQubitCap = 10;

/// p_l(t) for t = 0..t_max.
std::vector<SizeDistribution> exact_size_distributions(const compiler::QcaModel &model,
                                                       const Observable &o, int t_max);
SizeDistribution exact_size_distribution(const compiler::QcaModel &model, const Observable &o,
                                         int t);
/// Pauli weights of a dense operator, normalized by Tr[O^dag O].
SizeDistribution size_distribution(const CMatrix &op, std::size_t n);

/// Brute-force average of <psi|O(t)|psi>^2 over all 4^N tetrahedral
/// product states, N <= 6.
double tetra_ensemble_g(const compiler::QcaModel &model, const Observable &o, int t);

/// Limit distribution of a traceless random operator.
std::vector<double> random_operator_sizes(std::size_t n);

struct CliffordTrace {
    std::vector<std::size_t> weights;
    std::vector<double> g;
    std::vector<pauli::PauliString> strings;
};

CliffordTrace clifford_pauli_weights(const compiler::QcaModel &model, const Observable &o,
                                     int t_max);

/// (1/4) sum_i rho_i^{(x)k}, k <= 8.
CMatrix tetra_moment(int k);
/// Closed-form tensor decomposition, k = 1..4.
CMatrix tetra_moment_closed_form(int k);
/// Haar moment P_sym / (k+1).
CMatrix haar_moment(int k);

struct PrepResult {
    CVector state;
    CVector expected;
    double fidelity = 0.0;
    double frozen_excitation = 0.0;
    std::size_t segments = 0;
};

PrepResult simulate_prep_protocol(const Coloring &coloring, const lattice::AtomArray &array,
                                  double rabi = 1.0, const pxp::EngineOptions &options = {});

struct Histogram {
    double lo = -1.0;
    double hi = 1.0;
    std::vector<std::size_t> counts;
};

Histogram histogram(const std::vector<double> &values, std::size_t bins, double lo = -1.0,
                    double hi = 1.0);

} // namespace rydqca::chaos
