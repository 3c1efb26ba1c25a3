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
#include "rydqca/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rydqca/errors.hpp"

namespace rydqca::lattice {
namespace {

constexpr double kAncillaRadius = 0.1;
constexpr double kShellTolerance = 1e-9;

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Image of `b` closest to `a` under the periodic translations.
Vec2 nearest_image(Vec2 a, Vec2 b, const std::vector<Vec2> &periods) {
    Vec2 best = b;
    double best_d = norm(b - a);
    if (periods.empty()) {
        return best;
    }
    const int n1 = 2;
    const int n2 = periods.size() > 1 ? 2 : 0;
    for (int i = -n1; i <= n1; ++i) {
        for (int j = -n2; j <= n2; ++j) {
            Vec2 shift = static_cast<double>(i) * periods[0];
            if (periods.size() > 1) {
                shift = shift + static_cast<double>(j) * periods[1];
            }
            const Vec2 cand = b + shift;
            const double d = norm(cand - a);
            if (d < best_d - 1e-12) {
                best_d = d;
                best = cand;
            }
        }
    }
    return best;
}

std::string family_name(Family f) {
    switch (f) {
    case Family::Chain:
        return "Chain";
    case Family::Square:
        return "Square";
    case Family::Honeycomb:
        return "Honeycomb";
    }
    return "?";
}

void add_bond(DataGraph &g, std::size_t a, std::size_t b, const char *cls) {
    g.bonds.push_back({std::min(a, b), std::max(a, b), cls});
}

DataGraph trim(const DataGraph &g) {
    std::vector<bool> alive(g.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> deg(g.size(), 0);
        for (const auto &bond : g.bonds) {
            if (alive[bond.a] && alive[bond.b]) {
                ++deg[bond.a];
                ++deg[bond.b];
            }
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (alive[i] && deg[i] <= 1) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    std::vector<std::size_t> remap(g.size(), 0);
    DataGraph out;
    out.periods = g.periods;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (alive[i]) {
            remap[i] = out.positions.size();
            out.positions.push_back(g.positions[i]);
        }
    }
    for (const auto &bond : g.bonds) {
        if (alive[bond.a] && alive[bond.b]) {
            out.bonds.push_back({remap[bond.a], remap[bond.b], bond.bond_class});
        }
    }
    if (out.positions.empty()) {
        throw ConfigError("trim_dangling removed every site of the lattice");
    }
    return out;
}

} // namespace

void LatticeSpec::validate() const {
    const std::size_t dims = family == Family::Chain ? 1 : 2;
    if (extent.size() != dims) {
        throw ConfigError(family_name(family) + " lattice needs " +
                          std::to_string(dims) + " extent value(s), got " +
                          std::to_string(extent.size()));
    }
    for (int e : extent) {
        if (e < 1) {
            throw ConfigError("lattice extent must be >= 1 in every dimension");
        }
        if (boundary == Boundary::Periodic && e < 3) {
            throw ConfigError("periodic boundaries need extent >= 3 in every "
                              "wrapped direction");
        }
    }
    if (trim_dangling && boundary == Boundary::Periodic) {
        throw ConfigError("trim_dangling only applies to open lattices");
    }
}

std::vector<int> DataGraph::degrees() const {
    std::vector<int> deg(size(), 0);
    for (const auto &bond : bonds) {
        ++deg[bond.a];
        ++deg[bond.b];
    }
    return deg;
}

std::vector<std::string> bond_classes(Family family) {
    switch (family) {
    case Family::Chain:
        return {"x"};
    case Family::Square:
        return {"x", "y"};
    case Family::Honeycomb:
        return {"X", "Y", "Z"};
    }
    return {};
}

DataGraph build_graph(const LatticeSpec &spec) {
    spec.validate();
    const bool periodic = spec.boundary == Boundary::Periodic;
    DataGraph g;
    switch (spec.family) {
    case Family::Chain: {
        const std::size_t n = static_cast<std::size_t>(spec.extent[0]);
        for (std::size_t i = 0; i < n; ++i) {
            g.positions.push_back({2.0 * static_cast<double>(i), 0.0});
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            add_bond(g, i, i + 1, "x");
        }
        if (periodic) {
            add_bond(g, n - 1, 0, "x");
            g.periods = {{2.0 * static_cast<double>(n), 0.0}};
        }
        break;
    }
    case Family::Square: {
        const std::size_t lx = static_cast<std::size_t>(spec.extent[0]);
        const std::size_t ly = static_cast<std::size_t>(spec.extent[1]);
        auto idx = [lx](std::size_t x, std::size_t y) { return x + lx * y; };
        for (std::size_t y = 0; y < ly; ++y) {
            for (std::size_t x = 0; x < lx; ++x) {
                g.positions.push_back({2.0 * static_cast<double>(x),
                                       2.0 * static_cast<double>(y)});
            }
        }
        for (std::size_t y = 0; y < ly; ++y) {
            for (std::size_t x = 0; x < lx; ++x) {
                if (x + 1 < lx) {
                    add_bond(g, idx(x, y), idx(x + 1, y), "x");
                } else if (periodic) {
                    add_bond(g, idx(x, y), idx(0, y), "x");
                }
                if (y + 1 < ly) {
                    add_bond(g, idx(x, y), idx(x, y + 1), "y");
                } else if (periodic) {
                    add_bond(g, idx(x, y), idx(x, 0), "y");
                }
            }
        }
        if (periodic) {
            g.periods = {{2.0 * static_cast<double>(lx), 0.0},
                         {0.0, 2.0 * static_cast<double>(ly)}};
        }
        break;
    }
    case Family::Honeycomb: {
        // Sublattice A at the cell origin, B displaced by (2, 0). Z bonds
        // join A and B of the same cell, X bonds A(i,j)-B(i-1,j) and
        // Y bonds A(i,j)-B(i,j-1).
        const int lx = spec.extent[0];
        const int ly = spec.extent[1];
        const double s3 = std::sqrt(3.0);
        const Vec2 a1{3.0, s3};
        const Vec2 a2{3.0, -s3};
        auto a_idx = [lx](int i, int j) {
            return static_cast<std::size_t>(2 * (i + lx * j));
        };
        for (int j = 0; j < ly; ++j) {
            for (int i = 0; i < lx; ++i) {
                const Vec2 o = static_cast<double>(i) * a1 + static_cast<double>(j) * a2;
                g.positions.push_back(o);
                g.positions.push_back(o + Vec2{2.0, 0.0});
            }
        }
        for (int j = 0; j < ly; ++j) {
            for (int i = 0; i < lx; ++i) {
                const std::size_t a = a_idx(i, j);
                add_bond(g, a, a + 1, "Z");
                if (i >= 1 || periodic) {
                    add_bond(g, a, a_idx((i - 1 + lx) % lx, j) + 1, "X");
                }
                if (j >= 1 || periodic) {
                    add_bond(g, a, a_idx(i, (j - 1 + ly) % ly) + 1, "Y");
                }
            }
        }
        if (periodic) {
            g.periods = {static_cast<double>(lx) * a1, static_cast<double>(ly) * a2};
        }
        break;
    }
    }
    if (spec.trim_dangling) {
        g = trim(g);
    }
    return g;
}

GadgetAssignment GadgetAssignment::uniform(Family family, int size) {
    GadgetAssignment ga;
    for (const auto &cls : bond_classes(family)) {
        ga.sizes[cls] = size;
    }
    return ga;
}

std::vector<std::size_t> AtomArray::atoms_of(Species species) const {
    std::vector<std::size_t> out;
    for (const auto &atom : atoms) {
        if (atom.species == species) {
            out.push_back(atom.id);
        }
    }
    return out;
}

void AtomArray::validate() const {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].id != i) {
            throw ConfigError("atom ids must be dense 0..n-1");
        }
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto [a, b] : blockade_edges) {
        if (a >= atoms.size() || b >= atoms.size() || a == b) {
            throw ConfigError("blockade edge references an invalid atom");
        }
        if (atoms[a].species == Species::Data && atoms[b].species == Species::Data) {
            throw ConfigError("data atoms " + std::to_string(a) + " and " +
                              std::to_string(b) + " share a blockade edge");
        }
        edges.insert({std::min(a, b), std::max(a, b)});
    }
    auto connected = [&edges](std::size_t a, std::size_t b) {
        return edges.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    std::vector<int> owner(atoms.size(), -1);
    for (std::size_t g = 0; g < gadgets.size(); ++g) {
        const auto &gadget = gadgets[g];
        for (std::size_t anc : gadget.ancillas) {
            if (atoms[anc].species != Species::Ancilla || owner[anc] != -1 ||
                atoms[anc].gadget != g) {
                throw ConfigError("ancilla " + std::to_string(anc) +
                                  " is not owned by exactly one gadget");
            }
            owner[anc] = static_cast<int>(g);
            if (!connected(anc, gadget.data_a) || !connected(anc, gadget.data_b)) {
                throw ConfigError("gadget ancilla not blockaded by both endpoints");
            }
            for (std::size_t other : gadget.ancillas) {
                if (other != anc && !connected(anc, other)) {
                    throw ConfigError("gadget ancillas are not mutually blockaded");
                }
            }
        }
    }
    for (const auto &atom : atoms) {
        if (atom.species == Species::Ancilla && owner[atom.id] == -1) {
            throw ConfigError("ancilla " + std::to_string(atom.id) +
                              " does not belong to a gadget");
        }
    }
    // Ancillas touch only their own gadget and its two endpoints.
    for (auto [a, b] : blockade_edges) {
        for (auto [anc, other] : {std::pair{a, b}, std::pair{b, a}}) {
            if (atoms[anc].species != Species::Ancilla) {
                continue;
            }
            const auto &gadget = gadgets[static_cast<std::size_t>(owner[anc])];
            const bool ok = other == gadget.data_a || other == gadget.data_b ||
                            (atoms[other].species == Species::Ancilla &&
                             owner[other] == owner[anc]);
            if (!ok) {
                throw ConfigError("ancilla " + std::to_string(anc) +
                                  " is blockaded with an atom outside its gadget");
            }
        }
    }
}

AtomArray build_array(const LatticeSpec &spec, const GadgetAssignment &assignment) {
    const DataGraph graph = build_graph(spec);
    const auto classes = bond_classes(spec.family);

    for (const auto &[key, size] : assignment.sizes) {
        const bool is_class = std::find(classes.begin(), classes.end(), key) != classes.end();
        bool is_bond = false;
        if (!key.empty() && key[0] == '#') {
            try {
                is_bond = std::stoul(key.substr(1)) < graph.bonds.size();
            } catch (const std::exception &) {
                is_bond = false;
            }
        }
        if (!is_class && !is_bond) {
            throw ConfigError("unknown bond class '" + key + "' for " +
                              family_name(spec.family) + " lattice");
        }
        if (size < 1 || size > assignment.s_max) {
            throw ConfigError("superatom size " + std::to_string(size) + " on '" +
                              key + "' outside [1, " +
                              std::to_string(assignment.s_max) + "]");
        }
    }

    AtomArray array;
    array.n_data = graph.size();
    array.periods = graph.periods;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        array.atoms.push_back({i, graph.positions[i], Species::Data, std::nullopt});
    }
    for (std::size_t bi = 0; bi < graph.bonds.size(); ++bi) {
        const Bond &bond = graph.bonds[bi];
        int size = 0;
        if (auto it = assignment.sizes.find("#" + std::to_string(bi));
            it != assignment.sizes.end()) {
            size = it->second;
        } else if (auto jt = assignment.sizes.find(bond.bond_class);
                   jt != assignment.sizes.end()) {
            size = jt->second;
        } else {
            throw ConfigError("no gadget size for bond class '" + bond.bond_class + "'");
        }
        const Vec2 pa = graph.positions[bond.a];
        const Vec2 pb = nearest_image(pa, graph.positions[bond.b], graph.periods);
        const Vec2 mid = 0.5 * (pa + pb);

        Gadget gadget;
        gadget.bond = bi;
        gadget.bond_class = bond.bond_class;
        gadget.data_a = bond.a;
        gadget.data_b = bond.b;
        const std::size_t gid = array.gadgets.size();
        for (int k = 0; k < size; ++k) {
            Vec2 pos = mid;
            if (size > 1) {
                const double angle = 2.0 * 3.14159265358979323846 * k / size;
                pos = mid + Vec2{kAncillaRadius * std::cos(angle),
                                 kAncillaRadius * std::sin(angle)};
            }
            const std::size_t id = array.atoms.size();
            array.atoms.push_back({id, pos, Species::Ancilla, gid});
            array.blockade_edges.emplace_back(std::min(bond.a, id), std::max(bond.a, id));
            array.blockade_edges.emplace_back(std::min(bond.b, id), std::max(bond.b, id));
            for (std::size_t other : gadget.ancillas) {
                array.blockade_edges.emplace_back(other, id);
            }
            gadget.ancillas.push_back(id);
        }
        array.gadgets.push_back(std::move(gadget));
    }
    array.validate();
    return array;
}

AtomArray reference_pxp_chain(std::size_t length, Boundary boundary) {
    if (length == 0) {
        throw ConfigError("reference chain needs at least one atom");
    }
    if (boundary == Boundary::Periodic && length < 3) {
        throw ConfigError("periodic reference chain needs length >= 3");
    }
    AtomArray array;
    array.n_data = length;
    for (std::size_t i = 0; i < length; ++i) {
        array.atoms.push_back({i, {static_cast<double>(i), 0.0}, Species::Data, std::nullopt});
    }
    for (std::size_t i = 0; i + 1 < length; ++i) {
        array.blockade_edges.emplace_back(i, i + 1);
    }
    if (boundary == Boundary::Periodic) {
        array.blockade_edges.emplace_back(0, length - 1);
        array.periods = {{static_cast<double>(length), 0.0}};
    }
    return array;
}

double distance(const AtomArray &array, std::size_t i, std::size_t j) {
    const Vec2 a = array.atoms[i].position;
    const Vec2 b = nearest_image(a, array.atoms[j].position, array.periods);
    return norm(b - a);
}

BlockadeAudit blockade_audit(const AtomArray &array, const AuditOptions &options) {
    if (array.atoms.empty()) {
        throw ConfigError("blockade audit of an empty array");
    }
    if (!(options.exponent > 0.0)) {
        throw DomainError("audit exponent must be positive");
    }
    const std::size_t n = array.size();
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto [a, b] : array.blockade_edges) {
        edges.insert({std::min(a, b), std::max(a, b)});
    }
    const double p = options.exponent;

    BlockadeAudit audit;
    audit.per_atom.resize(n);
    double unwanted_total = 0.0;
    double blockade_total = 0.0;
    double worst = std::numeric_limits<double>::infinity();

    std::vector<double> shell_min(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(array, i, j);
            if (d < 1e-12) {
                throw GeometryError("atoms " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
            }
            const double v = std::pow(d, -p);
            if (edges.count({i, j}) > 0) {
                blockade_total += v;
                for (std::size_t k : {i, j}) {
                    audit.per_atom[k].blockade_count += 1;
                    audit.per_atom[k].blockade_sum += v;
                }
                continue;
            }
            if (options.inter_species_only &&
                array.atoms[i].species == array.atoms[j].species) {
                continue;
            }
            unwanted_total += v;
            for (std::size_t k : {i, j}) {
                auto &shell = audit.per_atom[k];
                if (d < shell_min[k] - kShellTolerance) {
                    shell_min[k] = d;
                    shell.shell_count = 1;
                } else if (std::abs(d - shell_min[k]) <= kShellTolerance) {
                    shell.shell_count += 1;
                }
            }
            if (d < worst - kShellTolerance) {
                worst = d;
                audit.worst_pair = std::pair{i, j};
                audit.worst_pair_distance = d;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto &shell = audit.per_atom[i];
        if (shell.shell_count == 0 || shell.blockade_count == 0) {
            continue;
        }
        shell.shell_distance = shell_min[i];
        shell.shell_ratio = static_cast<double>(shell.shell_count) *
                            std::pow(shell_min[i], -p) / shell.blockade_sum;
        audit.ratio_unwanted_over_blockade =
            std::max(audit.ratio_unwanted_over_blockade, shell.shell_ratio);
    }
    audit.ratio_all_pairs = blockade_total > 0.0 ? unwanted_total / blockade_total : 0.0;
    return audit;
}

} // namespace rydqca::lattice
