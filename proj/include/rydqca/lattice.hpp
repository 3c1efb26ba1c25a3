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

// Atom layouts on subdivision graphs: data atoms on lattice vertices, ancilla
// gadgets on bonds. The blockade graph is declared by construction; positions
// are carried only for the interaction audit and for export.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rydqca::lattice {

enum class Family { Chain, Square, Honeycomb };
enum class Boundary { Open, Periodic };
enum class Species { Data, Ancilla };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct LatticeSpec {
    Family family = Family::Chain;
    /// Chain: {L}; Square: {Lx, Ly}; Honeycomb: {Lx, Ly} unit cells.
    std::vector<int> extent;
    Boundary boundary = Boundary::Open;
    /// Iteratively remove sites of degree <= 1 (open lattices only). A 2x2
    /// open honeycomb patch trims down to a single hexagon.
    bool trim_dangling = false;

    void validate() const;
};

struct Bond {
    std::size_t a = 0;
    std::size_t b = 0;
    std::string bond_class;
};

/// The target lattice on data sites. Coordinates are in units of the
/// data-ancilla spacing d, so neighboring data sites sit 2 apart.
struct DataGraph {
    std::vector<Vec2> positions;
    std::vector<Bond> bonds;
    /// Periodic translation vectors (empty for open boundaries).
    std::vector<Vec2> periods;

    std::size_t size() const { return positions.size(); }
    std::vector<int> degrees() const;
};

std::vector<std::string> bond_classes(Family family);
DataGraph build_graph(const LatticeSpec &spec);

/// Superatom size per bond class ("x", "y" / "X", "Y", "Z") or per individual
/// bond (key "#<bond index>", which overrides the class entry).
struct GadgetAssignment {
    std::map<std::string, int> sizes;
    int s_max = 3;

    static GadgetAssignment uniform(Family family, int size);
};

struct Atom {
    std::size_t id = 0;
    Vec2 position;
    Species species = Species::Data;
    std::optional<std::size_t> gadget;
};

struct Gadget {
    std::size_t bond = 0;
    std::string bond_class;
    std::size_t data_a = 0;
    std::size_t data_b = 0;
    std::vector<std::size_t> ancillas;
};

/// Atoms 0..N-1 are the data atoms (atom id == data site index); ancillas
/// follow gadget by gadget in bond order.
struct AtomArray {
    std::vector<Atom> atoms;
    std::vector<std::pair<std::size_t, std::size_t>> blockade_edges;
    std::vector<Gadget> gadgets;
    std::size_t n_data = 0;
    std::vector<Vec2> periods;

    std::size_t size() const { return atoms.size(); }
    std::vector<std::size_t> atoms_of(Species species) const;
    /// Throws ConfigError describing the first violated invariant.
    void validate() const;
};

AtomArray build_array(const LatticeSpec &spec, const GadgetAssignment &gadgets);

/// Single-species nearest-neighbor blockaded chain with unit spacing, the
/// usual 1D PXP geometry. Used as the reference point of the audit; it
/// intentionally violates the dual-species invariants of build_array.
AtomArray reference_pxp_chain(std::size_t length, Boundary boundary);

struct AuditOptions {
    double exponent = 6.0;
    /// Only pairs of different species count as unwanted. Turn off for
    /// single-species references.
    bool inter_species_only = true;
};

struct AtomShell {
    std::size_t blockade_count = 0;
    double blockade_sum = 0.0;   // sum_j d_ij^-p over blockade partners
    std::size_t shell_count = 0; // unwanted partners at the nearest distance
    double shell_distance = 0.0;
    double shell_ratio = 0.0;    // shell_count * shell_distance^-p / blockade_sum
};

struct BlockadeAudit {
    /// Dominant-shell ratio, maximized over atoms.
    double ratio_unwanted_over_blockade = 0.0;
    /// sum over all unwanted pairs of d^-p / sum over blockade pairs of d^-p.
    double ratio_all_pairs = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    double worst_pair_distance = 0.0;
    std::vector<AtomShell> per_atom;
};

BlockadeAudit blockade_audit(const AtomArray &array, const AuditOptions &options = {});

double distance(const AtomArray &array, std::size_t i, std::size_t j);

} // namespace rydqca::lattice
