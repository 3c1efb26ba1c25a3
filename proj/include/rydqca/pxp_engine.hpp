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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rydqca/lattice.hpp"
#include "rydqca/types.hpp"

namespace rydqca::pxp {

using lattice::AtomArray;
using lattice::Species;

struct EngineOptions {
    /// Largest admissible constrained-basis dimension.
    std::size_t max_dimension = std::size_t{1} << 22;
    /// Dense exponentials up to this dimension, Lanczos above.
    std::size_t dense_cap = 256;
    double krylov_tol = 1e-12;
};

/// Blockade-allowed configurations, bit i of a state = atom i in |r>.
/// Ordered lexicographically with atom 0 as the leading character.
class ConstrainedBasis {
public:
    ConstrainedBasis(const AtomArray &array, std::size_t max_dimension);

    std::size_t dimension() const { return states_.size(); }
    std::size_t n_atoms() const { return species_.size(); }
    std::uint64_t state(std::size_t k) const { return states_[k]; }
    const std::vector<std::uint64_t> &states() const { return states_; }
    std::optional<std::size_t> index_of(std::uint64_t bits) const;
    bool allowed(std::uint64_t bits) const;
    const std::vector<std::vector<std::size_t>> &neighbors() const { return neighbors_; }
    Species species(std::size_t atom) const { return species_[atom]; }
    std::uint64_t species_mask(Species s) const;
    /// "g"/"r" per atom, atom 0 first.
    std::string bitstring(std::size_t k) const;

private:
    std::vector<Species> species_;
    std::vector<std::vector<std::size_t>> neighbors_;
    std::vector<std::uint64_t> neighbor_mask_;
    std::vector<std::uint64_t> states_;
    std::vector<std::uint64_t> keys_;
};

/// Throws ResourceError with the computed dimension above the cap.
std::shared_ptr<const ConstrainedBasis> enumerate_basis(const AtomArray &array,
                                                        const EngineOptions &options = {});

struct StateVector {
    std::shared_ptr<const ConstrainedBasis> basis;
    CVector amplitudes;

    double norm() const;
    Complex amplitude(std::uint64_t bits) const;
};

StateVector basis_state(std::shared_ptr<const ConstrainedBasis> basis, std::uint64_t bits);

/// Embeds a state on the data qubits (bit j = data atom j) with every
/// ancilla in |g>. Data atoms must carry ids 0..n_data-1.
StateVector embed_data_state(std::shared_ptr<const ConstrainedBasis> basis,
                             std::size_t n_data, const CVector &data);

/// Inverse of embed_data_state restricted to the all-ancilla-|g> sector.
CVector project_data_state(const StateVector &state, std::size_t n_data);

Complex overlap(const StateVector &a, const StateVector &b);

/// xi(t) = xi0 + slope * t
struct LinearPhase {
    double xi0 = 0.0;
    double slope = 0.0;
};

struct PiecewisePhase {
    std::vector<double> values;
    double dt = 0.0;
};

struct PulseSegment {
    Species species = Species::Ancilla;
    double rabi = 1.0;
    std::variant<LinearPhase, PiecewisePhase> phase = LinearPhase{};
    double duration = 0.0;
    double detuning = 0.0;
    std::vector<std::size_t> frozen;

    void validate(std::size_t n_atoms) const;
};

/// Non-physical shortcut: each listed atom undergoes the 2x2 unitary in its
/// (g, r) subspace when all of its blockade neighbors are in |g>, and is left
/// untouched otherwise.
struct LocalUnitarySegment {
    std::vector<std::pair<std::size_t, CMatrix2>> ops;
};

using Segment = std::variant<PulseSegment, LocalUnitarySegment>;

struct PulseProgram {
    std::size_t n_atoms = 0;
    std::vector<Segment> segments;

    std::size_t count(Species species) const;
};

struct RunRecord {
    StateVector state;
    std::vector<double> norms;
    std::vector<double> leakage;
};

class Engine {
public:
    explicit Engine(const AtomArray &array, EngineOptions options = {});

    const std::shared_ptr<const ConstrainedBasis> &basis() const { return basis_; }
    const EngineOptions &options() const { return options_; }

    StateVector hamiltonian_apply(const StateVector &state, Species species, double rabi,
                                  double phase, double detuning,
                                  const std::vector<std::size_t> &frozen) const;
    void evolve_segment(StateVector &state, const Segment &segment) const;
    RunRecord run_program(const StateVector &initial, const PulseProgram &program) const;

private:
    struct Drive {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs; // (g index, r index)
        std::vector<double> excited;                                // driven atoms in |r>
        std::size_t max_degree = 0;
        double max_excited = 0.0;
    };
    struct DenseKey {
        const Drive *drive;
        double rabi;
        double shift;
        double t;
        bool operator<(const DenseKey &o) const;
    };

    std::shared_ptr<const Drive> drive(Species species,
                                       const std::vector<std::size_t> &frozen) const;
    void apply_h0(const Drive &d, double rabi, double shift, const Complex *in,
                  Complex *out) const;
    /// psi <- exp(-i (H(0) + shift * n) t) psi
    void propagate(const Drive &d, double rabi, double shift, double t, CVector &psi) const;
    void apply_phase(const Drive &d, double xi, CVector &psi) const;
    void apply_local(StateVector &state, const LocalUnitarySegment &seg) const;

    EngineOptions options_;
    std::shared_ptr<const ConstrainedBasis> basis_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, std::vector<std::size_t>>, std::shared_ptr<const Drive>> drives_;
    mutable std::map<DenseKey, std::shared_ptr<const CMatrix>> dense_;
};

/// 1 - P(all ancillas in |g>)
double ancilla_return_check(const StateVector &state);

struct SuperatomModel {
    int size = 1;
    double rabi = 1.0;
    double effective_rabi = 1.0; // sqrt(S) * rabi between |G_S> and |R_S>
};

SuperatomModel superatom_reduce(int size, double rabi);

} // namespace rydqca::pxp
