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
#include "rydqca/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "rydqca/kernels/kernels.hpp"
#include "rydqca/linalg.hpp"
#include "rydqca/parallel.hpp"

namespace rydqca::compiler {
namespace {

constexpr char kBasisLetter[3] = {'X', 'Y', 'Z'};
constexpr double kPhaseZeroTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite_all(std::initializer_list<double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool phase_is_zero(double phi) {
    const double w = control::wrap_phase(phi);
    return w < kPhaseZeroTol || 2.0 * kPi - w < kPhaseZeroTol;
}

bool is_identity_like(const CMatrix2 &u) {
    return std::abs(u(0, 1)) < 1e-14 && std::abs(u(1, 0)) < 1e-14 &&
           std::abs(u(0, 0) - u(1, 1)) < 1e-14;
}

CMatrix2 z_rotation(double theta) { return pauli_rotation(pauli_matrix::z(), theta); }

/// Per-site count of bonds of each gadget class.
std::map<std::string, std::vector<int>> class_degrees(const lattice::AtomArray &array) {
    std::map<std::string, std::vector<int>> deg;
    for (const auto &g : array.gadgets) {
        auto &v = deg[g.bond_class];
        v.resize(array.n_data, 0);
        ++v[g.data_a];
        ++v[g.data_b];
    }
    return deg;
}

int class_size(const lattice::AtomArray &array, const std::string &cls) {
    for (const auto &g : array.gadgets) {
        if (g.bond_class == cls) {
            return static_cast<int>(g.ancillas.size());
        }
    }
    return 0;
}

std::vector<int> sizes_present(const lattice::AtomArray &array) {
    std::set<int> s;
    for (const auto &g : array.gadgets) {
        s.insert(static_cast<int>(g.ancillas.size()));
    }
    return {s.begin(), s.end()};
}

/// U <- exp(-i theta P) U for Hermitian Pauli P.
void rotate_rows(CMatrix &u, const pauli::PauliString &p, double theta) {
    const double c = std::cos(theta);
    const Complex s(0.0, -std::sin(theta));
    const std::uint64_t xm = p.x_mask();
    CMatrix out = c * u;
    for (Eigen::Index j = 0; j < u.rows(); ++j) {
        const auto uj = static_cast<std::uint64_t>(j);
        out.row(static_cast<Eigen::Index>(uj ^ xm)) += s * p.coefficient(uj) * u.row(j);
    }
    u = std::move(out);
}

pauli::PauliString letter_pauli(std::size_t n, const std::vector<std::size_t> &sites, int basis) {
    pauli::PauliString p(n);
    for (std::size_t s : sites) {
        p.set(s, kBasisLetter[basis]);
    }
    return p;
}

} // namespace

void QcaModel::validate() const {
    lattice.validate();
    if (!std::isfinite(tau)) {
        throw ConfigError("tau must be finite");
    }
    std::visit(overloaded{
                   [&](const KickedIsing &m) {
                       if (!finite_all({m.J, m.h, m.b})) {
                           throw ConfigError("kicked-Ising couplings must be finite");
                       }
                   },
                   [&](const InhomKickedIsing &m) {
                       if (lattice.family != lattice::Family::Square) {
                           throw ConfigError("inhomogeneous kicked-Ising requires a Square lattice");
                       }
                       if (!finite_all({m.J_x, m.J_y, m.h, m.b})) {
                           throw ConfigError("inhomogeneous kicked-Ising couplings must be finite");
                       }
                   },
                   [&](const KitaevFloquet &m) {
                       if (lattice.family != lattice::Family::Honeycomb) {
                           throw ConfigError("Kitaev Floquet model requires a Honeycomb lattice");
                       }
                       for (int a = 0; a < 3; ++a) {
                           if (!finite_all({m.J[a], m.h[a]})) {
                               throw ConfigError("Kitaev couplings must be finite");
                           }
                       }
                   },
                   [&](const TwoLocal &m) {
                       for (int a = 0; a < 3; ++a) {
                           if (!finite_all({m.c[a], m.h[a]})) {
                               throw ConfigError("two-local couplings must be finite");
                           }
                       }
                   },
               },
               params);
}

std::string QcaModel::variant_name() const {
    return std::visit(overloaded{
                          [](const KickedIsing &) { return std::string("KickedIsing"); },
                          [](const InhomKickedIsing &) { return std::string("InhomKickedIsing"); },
                          [](const KitaevFloquet &) { return std::string("KitaevFloquet"); },
                          [](const TwoLocal &) { return std::string("TwoLocal"); },
                      },
                      params);
}

std::vector<Layer> model_layers(const QcaModel &model) {
    model.validate();
    const auto graph = lattice::build_graph(model.lattice);
    const std::size_t n = graph.size();
    std::vector<Layer> layers;
    auto bond_layer = [&](int basis, auto coupling_of, double field) {
        Layer l;
        l.basis = basis;
        for (const auto &b : graph.bonds) {
            const double j = coupling_of(b);
            if (j != 0.0) {
                l.couplings.emplace_back(b.a, b.b, j);
            }
        }
        l.fields.assign(n, field);
        return l;
    };
    std::visit(overloaded{
                   [&](const KickedIsing &m) {
                       layers.push_back(bond_layer(2, [&](const lattice::Bond &) { return m.J; }, m.h));
                       layers.push_back(bond_layer(0, [](const lattice::Bond &) { return 0.0; }, m.b));
                   },
                   [&](const InhomKickedIsing &m) {
                       layers.push_back(bond_layer(
                           2, [&](const lattice::Bond &b) { return b.bond_class == "x" ? m.J_x : m.J_y; },
                           m.h));
                       layers.push_back(bond_layer(0, [](const lattice::Bond &) { return 0.0; }, m.b));
                   },
                   [&](const KitaevFloquet &m) {
                       for (int a : {2, 1, 0}) {
                           const std::string cls(1, kBasisLetter[a]);
                           layers.push_back(bond_layer(
                               a, [&](const lattice::Bond &b) { return b.bond_class == cls ? m.J[a] : 0.0; },
                               m.h[a]));
                       }
                   },
                   [&](const TwoLocal &m) {
                       for (int a : {0, 1, 2}) {
                           layers.push_back(bond_layer(a, [&](const lattice::Bond &) { return m.c[a]; }, m.h[a]));
                       }
                   },
               },
               model.params);
    return layers;
}

pauli::PauliSum layer_hamiltonian(const Layer &layer, std::size_t n) {
    pauli::PauliSum h;
    h.n = n;
    for (const auto &[a, b, j] : layer.couplings) {
        h.add(j, letter_pauli(n, {a, b}, layer.basis));
    }
    for (std::size_t i = 0; i < layer.fields.size(); ++i) {
        if (layer.fields[i] != 0.0) {
            h.add(layer.fields[i], letter_pauli(n, {i}, layer.basis));
        }
    }
    return h;
}

CMatrix2 basis_rotation(int basis) {
    switch (basis) {
    case 0:
        return pauli_rotation(pauli_matrix::y(), -kPi / 4.0);
    case 1:
        return pauli_rotation(pauli_matrix::x(), kPi / 4.0);
    case 2:
        return CMatrix2::Identity();
    default:
        throw DomainError("basis index must be 0, 1 or 2");
    }
}

Eigen::Matrix4cd cz_matrix(double phi) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(0, 0) = std::exp(Complex(0.0, phi));
    return m;
}

StepOperator::StepOperator(const QcaModel &model) {
    const auto layers = model_layers(model);
    n_ = lattice::build_graph(model.lattice).size();
    if (n_ > 26) {
        throw ResourceError("state-vector step operator limited to 26 qubits, got " +
                            std::to_string(n_));
    }
    auto push_1q = [&](std::map<std::size_t, CMatrix2> gates) {
        if (!ops_.empty()) {
            if (auto *prev = std::get_if<OneQubitLayer>(&ops_.back())) {
                for (auto &[q, u] : prev->gates) {
                    auto it = gates.find(q);
                    gates[q] = it == gates.end() ? u : CMatrix2(it->second * u);
                }
                ops_.pop_back();
            }
        }
        OneQubitLayer l;
        for (auto &[q, u] : gates) {
            if (!is_identity_like(u) || std::abs(u(0, 0) - 1.0) > 1e-15) {
                l.gates.emplace_back(q, u);
            }
        }
        if (!l.gates.empty()) {
            ops_.emplace_back(std::move(l));
        }
    };
    for (const auto &layer : layers) {
        const CMatrix2 sigma = pauli_matrix::by_index(layer.basis + 1);
        if (layer.couplings.empty()) {
            std::map<std::size_t, CMatrix2> g;
            for (std::size_t i = 0; i < n_; ++i) {
                if (layer.fields[i] != 0.0) {
                    g[i] = pauli_rotation(sigma, model.tau * layer.fields[i]);
                }
            }
            push_1q(std::move(g));
            continue;
        }
        const CMatrix2 r = basis_rotation(layer.basis);
        if (layer.basis != 2) {
            std::map<std::size_t, CMatrix2> g;
            for (std::size_t i = 0; i < n_; ++i) {
                g[i] = r;
            }
            push_1q(std::move(g));
        }
        DiagonalLayer d;
        d.phases.resize(std::size_t{1} << n_);
        for (std::size_t j = 0; j < d.phases.size(); ++j) {
            double e = 0.0;
            auto s = [j](std::size_t q) { return ((j >> q) & 1U) ? 1.0 : -1.0; };
            for (const auto &[a, b, jj] : layer.couplings) {
                e += jj * s(a) * s(b);
            }
            for (std::size_t i = 0; i < n_; ++i) {
                e += layer.fields[i] * s(i);
            }
            d.phases[j] = std::exp(Complex(0.0, -model.tau * e));
        }
        ops_.emplace_back(std::move(d));
        if (layer.basis != 2) {
            std::map<std::size_t, CMatrix2> g;
            for (std::size_t i = 0; i < n_; ++i) {
                g[i] = r.adjoint();
            }
            push_1q(std::move(g));
        }
    }
}

void StepOperator::apply(CVector &psi) const {
    if (psi.size() != (std::size_t{1} << n_)) {
        throw DomainError("state dimension does not match the model");
    }
    for (const auto &op : ops_) {
        if (const auto *l = std::get_if<OneQubitLayer>(&op)) {
            for (const auto &[q, u] : l->gates) {
                kernels::apply_1q(psi, q, u);
            }
        } else {
            kernels::apply_diagonal(psi, std::get<DiagonalLayer>(op).phases);
        }
    }
}

CMatrix ideal_step_unitary(const QcaModel &model) {
    const auto layers = model_layers(model);
    const std::size_t n = lattice::build_graph(model.lattice).size();
    if (n > kDenseQubitCap) {
        throw ResourceError("dense step unitary limited to " + std::to_string(kDenseQubitCap) +
                            " data qubits, got " + std::to_string(n));
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (const auto &layer : layers) {
        const auto h = layer_hamiltonian(layer, n);
        for (const auto &[c, p] : h.terms) {
            rotate_rows(u, p, model.tau * c.real());
        }
    }
    return u;
}

void GateCircuit::validate(const lattice::DataGraph &graph) const {
    std::set<std::pair<std::size_t, std::size_t>> bonds;
    for (const auto &b : graph.bonds) {
        bonds.insert({std::min(b.a, b.b), std::max(b.a, b.b)});
    }
    for (const auto &layer : layers) {
        std::set<std::size_t> used;
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        bool has_1q = false, has_cz = false;
        for (const auto &g : layer) {
            if (const auto *s = std::get_if<SingleQubitGate>(&g)) {
                has_1q = true;
                if (s->qubit >= n_qubits || !used.insert(s->qubit).second) {
                    throw ConfigError("single-qubit gates within a layer must act on distinct valid qubits");
                }
            } else {
                has_cz = true;
                const auto &cz = std::get<CzGate>(g);
                if (cz.a >= n_qubits || cz.b >= n_qubits || cz.a == cz.b) {
                    throw ConfigError("CZ gate on invalid qubits");
                }
                const auto key = std::make_pair(std::min(cz.a, cz.b), std::max(cz.a, cz.b));
                if (!bonds.count(key)) {
                    throw ConfigError("CZ gate on non-adjacent qubits");
                }
                if (!pairs.insert(key).second) {
                    throw ConfigError("CZ layer repeats a bond");
                }
            }
        }
        if (has_1q && has_cz) {
            throw ConfigError("a circuit layer mixes single-qubit and CZ gates");
        }
    }
}

void apply_circuit(const GateCircuit &circuit, CVector &psi) {
    for (const auto &layer : circuit.layers) {
        for (const auto &g : layer) {
            if (const auto *s = std::get_if<SingleQubitGate>(&g)) {
                kernels::apply_1q(psi, s->qubit, s->u);
            } else {
                const auto &cz = std::get<CzGate>(g);
                const std::size_t m = (std::size_t{1} << cz.a) | (std::size_t{1} << cz.b);
                const Complex ph = std::exp(Complex(0.0, cz.phi));
                for (std::size_t j = 0; j < psi.size(); ++j) {
                    if ((j & m) == 0) {
                        psi[j] *= ph;
                    }
                }
            }
        }
    }
}

CMatrix circuit_unitary(const GateCircuit &circuit) {
    if (circuit.n_qubits > kDenseQubitCap) {
        throw ResourceError("dense circuit unitary limited to " + std::to_string(kDenseQubitCap) +
                            " qubits");
    }
    const std::size_t dim = std::size_t{1} << circuit.n_qubits;
    CMatrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    CVector col(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), Complex(0.0));
        col[j] = 1.0;
        apply_circuit(circuit, col);
        for (std::size_t i = 0; i < dim; ++i) {
            u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
    }
    return u;
}

lattice::GadgetAssignment default_assignment(const QcaModel &model) {
    lattice::GadgetAssignment ga;
    std::visit(overloaded{
                   [&](const KickedIsing &) { ga = lattice::GadgetAssignment::uniform(model.lattice.family, 1); },
                   [&](const InhomKickedIsing &) { ga.sizes = {{"x", 1}, {"y", 2}}; },
                   [&](const KitaevFloquet &) { ga.sizes = {{"Z", 1}, {"Y", 2}, {"X", 3}}; },
                   [&](const TwoLocal &) { ga = lattice::GadgetAssignment::uniform(model.lattice.family, 1); },
               },
               model.params);
    return ga;
}

std::vector<Stage> step_stages(const QcaModel &model, const lattice::AtomArray &array) {
    model.validate();
    const std::size_t n = array.n_data;
    const double tau = model.tau;
    const auto deg = class_degrees(array);
    auto degree_of = [&](const std::string &cls, std::size_t i) {
        auto it = deg.find(cls);
        return it == deg.end() ? 0 : it->second[i];
    };
    const auto present = sizes_present(array);
    auto gadget = [&](std::map<int, double> by_size) {
        GadgetStage g;
        for (int s : present) {
            auto it = by_size.find(s);
            g.phases[s] = it == by_size.end() ? 2.0 * kPi : it->second;
        }
        return g;
    };
    const CMatrix2 x = pauli_matrix::x();

    std::vector<Stage> stages;
    std::visit(overloaded{
                   [&](const KickedIsing &m) {
                       stages.push_back(gadget({{1, -4.0 * tau * m.J}}));
                       DataStage d;
                       for (std::size_t i = 0; i < n; ++i) {
                           int g = 0;
                           for (const auto &[cls, v] : deg) {
                               g += v[i];
                           }
                           d.unitaries.push_back(pauli_rotation(x, tau * m.b) *
                                                 z_rotation(tau * (m.h + g * m.J)));
                       }
                       stages.push_back(d);
                   },
                   [&](const InhomKickedIsing &m) {
                       stages.push_back(gadget({{class_size(array, "x"), -4.0 * tau * m.J_x},
                                                {class_size(array, "y"), -4.0 * tau * m.J_y}}));
                       DataStage d;
                       for (std::size_t i = 0; i < n; ++i) {
                           const double a = tau * (m.h + degree_of("x", i) * m.J_x + degree_of("y", i) * m.J_y);
                           d.unitaries.push_back(pauli_rotation(x, tau * m.b) * z_rotation(a));
                       }
                       stages.push_back(d);
                   },
                   [&](const KitaevFloquet &m) {
                       for (int a : {2, 1, 0}) {
                           const std::string cls(1, kBasisLetter[a]);
                           const CMatrix2 r = basis_rotation(a);
                           DataStage pre, post;
                           for (std::size_t i = 0; i < n; ++i) {
                               pre.unitaries.push_back(z_rotation(tau * (m.h[a] + degree_of(cls, i) * m.J[a])) * r);
                               post.unitaries.push_back(r.adjoint());
                           }
                           stages.push_back(pre);
                           stages.push_back(gadget({{class_size(array, cls), -4.0 * tau * m.J[a]}}));
                           stages.push_back(post);
                       }
                   },
                   [&](const TwoLocal &m) {
                       for (int a : {0, 1, 2}) {
                           if (m.c[a] == 0.0 && m.h[a] == 0.0) {
                               continue;
                           }
                           const CMatrix2 r = basis_rotation(a);
                           DataStage pre, post;
                           for (std::size_t i = 0; i < n; ++i) {
                               int g = 0;
                               for (const auto &[cls, v] : deg) {
                                   g += v[i];
                               }
                               pre.unitaries.push_back(z_rotation(tau * (g * m.c[a] + m.h[a])) * r);
                               post.unitaries.push_back(r.adjoint());
                           }
                           stages.push_back(pre);
                           stages.push_back(gadget({{1, -4.0 * tau * m.c[a]}}));
                           stages.push_back(post);
                       }
                   },
               },
               model.params);
    return stages;
}

std::vector<Stage> merge_stages(const std::vector<Stage> &stages, std::size_t n_data) {
    std::vector<Stage> out;
    for (const auto &st : stages) {
        if (const auto *g = std::get_if<GadgetStage>(&st)) {
            const bool trivial = std::all_of(g->phases.begin(), g->phases.end(),
                                             [](const auto &kv) { return phase_is_zero(kv.second); });
            if (!trivial) {
                out.push_back(st);
            }
            continue;
        }
        const auto &d = std::get<DataStage>(st);
        if (d.unitaries.size() != n_data) {
            throw DomainError("data stage size does not match the data-atom count");
        }
        if (!out.empty()) {
            if (auto *prev = std::get_if<DataStage>(&out.back())) {
                for (std::size_t i = 0; i < n_data; ++i) {
                    prev->unitaries[i] = d.unitaries[i] * prev->unitaries[i];
                }
                continue;
            }
        }
        out.push_back(st);
    }
    // Drop data stages that are the identity on every site (up to phase).
    std::vector<Stage> kept;
    for (auto &st : out) {
        if (const auto *d = std::get_if<DataStage>(&st)) {
            if (std::all_of(d->unitaries.begin(), d->unitaries.end(), is_identity_like)) {
                continue;
            }
        }
        kept.push_back(std::move(st));
    }
    return kept;
}

namespace {

GateCircuit circuit_from(const std::vector<Stage> &stages, const lattice::AtomArray &array) {
    GateCircuit c;
    c.n_qubits = array.n_data;
    for (const auto &st : stages) {
        std::vector<Gate> layer;
        if (const auto *d = std::get_if<DataStage>(&st)) {
            for (std::size_t i = 0; i < d->unitaries.size(); ++i) {
                layer.push_back(SingleQubitGate{d->unitaries[i], i});
            }
        } else {
            const auto &g = std::get<GadgetStage>(st);
            for (const auto &gd : array.gadgets) {
                const double phi = g.phases.at(static_cast<int>(gd.ancillas.size()));
                if (!phase_is_zero(phi)) {
                    layer.push_back(CzGate{phi, gd.data_a, gd.data_b});
                }
            }
        }
        if (!layer.empty()) {
            c.layers.push_back(std::move(layer));
        }
    }
    return c;
}

std::vector<pxp::Segment> data_segments(const DataStage &d, bool physical, double omega) {
    std::vector<pxp::Segment> out;
    if (!physical) {
        pxp::LocalUnitarySegment seg;
        for (std::size_t i = 0; i < d.unitaries.size(); ++i) {
            if (!is_identity_like(d.unitaries[i])) {
                seg.ops.emplace_back(i, d.unitaries[i]);
            }
        }
        if (!seg.ops.empty()) {
            out.emplace_back(std::move(seg));
        }
        return out;
    }
    const CMatrix2 &u0 = d.unitaries.front();
    for (const auto &u : d.unitaries) {
        if ((u - u0).cwiseAbs().maxCoeff() > 1e-10) {
            throw ConfigError("physical mode needs identical single-qubit layers on every data "
                              "atom (uniform lattice degree); use exact single-qubit segments");
        }
    }
    for (auto &p : control::single_qubit_pulses(u0, omega, pxp::Species::Data)) {
        out.emplace_back(std::move(p));
    }
    return out;
}

std::vector<pxp::Segment> emit(const std::vector<Stage> &stages, const CompilationReport &r) {
    std::vector<pxp::Segment> segs;
    std::size_t gi = 0;
    for (const auto &st : stages) {
        if (const auto *d = std::get_if<DataStage>(&st)) {
            for (auto &s : data_segments(*d, r.physical, r.omega)) {
                segs.push_back(std::move(s));
            }
        } else {
            const auto &gp = r.gadget_pulses.at(gi % r.gadget_pulses.size());
            ++gi;
            for (const auto &s : gp.segments) {
                segs.emplace_back(s);
            }
        }
    }
    return segs;
}

} // namespace

CompilationReport compile(const QcaModel &model, const CompileOptions &options) {
    model.validate();
    if (!(options.omega > 0.0)) {
        throw ConfigError("Rabi frequency must be positive");
    }
    CompilationReport r;
    r.model = model;
    r.assignment = default_assignment(model);
    r.array = lattice::build_array(model.lattice, r.assignment);
    r.physical = options.physical;
    r.omega = options.omega;
    r.sizes_used = sizes_present(r.array);
    r.raw_stages = step_stages(model, r.array);
    r.stages = merge_stages(r.raw_stages, r.array.n_data);
    r.circuit = circuit_from(r.stages, r.array);

    std::map<std::vector<double>, GadgetPulse> cache;
    for (const auto &st : r.stages) {
        const auto *g = std::get_if<GadgetStage>(&st);
        if (!g) {
            continue;
        }
        std::vector<double> key;
        for (const auto &[s, phi] : g->phases) {
            key.push_back(control::wrap_phase(phi));
        }
        if (auto it = cache.find(key); it != cache.end()) {
            r.gadget_pulses.push_back(it->second);
            continue;
        }
        GadgetPulse gp;
        gp.phases = g->phases;
        if (g->phases.size() == 1) {
            const auto [size, phi] = *g->phases.begin();
            const auto p = control::cz_pulse_params(control::wrap_phase(phi), size, options.omega);
            gp.method = "closed-form";
            gp.segments.push_back(control::cz_pulse_segment(p));
            gp.duration = p.t_f;
        } else {
            control::GrapeProblem prob;
            for (const auto &[s, phi] : g->phases) {
                prob.sizes.push_back(s);
                prob.target_phases.push_back(control::wrap_phase(phi));
            }
            prob.omega = options.omega;
            prob.M = options.grape_M;
            prob.threshold = options.grape_threshold;
            std::vector<double> grid = options.grape_t_grid;
            if (options.grape_T) {
                grid = {*options.grape_T * options.omega};
            }
            if (grid.empty()) {
                for (double t = 40.0; t >= 1.0 - 1e-12; t -= 0.5) {
                    grid.push_back(t);
                }
            }
            for (auto &t : grid) {
                t /= options.omega;
            }
            prob.T = grid.front();
            auto scan = control::time_optimal_scan(prob, grid, options.scan);
            if (!scan.feasible) {
                throw CompileError("mediated-gate GRAPE infeasible at threshold " +
                                       std::to_string(prob.threshold) + " (best error " +
                                       std::to_string(scan.best_error) + ")",
                                   scan);
            }
            prob.T = scan.t_min;
            gp.method = "grape";
            gp.segments.push_back(control::grape_segment(prob, scan.xi_at_t_min));
            gp.error = scan.error_at_t_min;
            gp.duration = scan.t_min;
            gp.scan = std::move(scan);
        }
        cache.emplace(key, gp);
        r.gadget_pulses.push_back(std::move(gp));
    }

    r.program.n_atoms = r.array.size();
    r.program.segments = emit(r.stages, r);
    r.segments_per_step = r.program.segments.size();
    r.ancilla_pulses_per_step = r.program.count(pxp::Species::Ancilla);
    return r;
}

pxp::PulseProgram program_for(const CompilationReport &report, int repetitions) {
    if (repetitions < 0) {
        throw ConfigError("repetitions must be non-negative");
    }
    std::vector<Stage> raw;
    for (int k = 0; k < repetitions; ++k) {
        raw.insert(raw.end(), report.raw_stages.begin(), report.raw_stages.end());
    }
    pxp::PulseProgram p;
    p.n_atoms = report.array.size();
    if (raw.empty()) {
        return p;
    }
    p.segments = emit(merge_stages(raw, report.array.n_data), report);
    return p;
}

VerifyReport verify(const CompilationReport &report, int repetitions, const VerifyOptions &options) {
    VerifyReport out;
    out.repetitions = repetitions;
    if (repetitions == 0) {
        return out;
    }
    const pxp::Engine engine(report.array, options.engine);
    out.basis_dimension = engine.basis()->dimension();
    const auto program = program_for(report, repetitions);
    const StepOperator step(report.model);
    const std::size_t n = report.array.n_data;
    const std::size_t dim = std::size_t{1} << n;

    std::vector<CVector> inputs;
    for (std::size_t j = 0; j < dim; ++j) {
        CVector v(dim, Complex(0.0));
        v[j] = 1.0;
        inputs.push_back(std::move(v));
    }
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    for (std::size_t k = 0; k < options.random_states; ++k) {
        CVector v(dim);
        double nrm = 0.0;
        for (auto &a : v) {
            a = Complex(normal(rng), normal(rng));
            nrm += std::norm(a);
        }
        for (auto &a : v) {
            a /= std::sqrt(nrm);
        }
        inputs.push_back(std::move(v));
    }

    std::vector<double> fid(inputs.size()), leak(inputs.size());
    parallel_for(
        inputs.size(),
        [&](std::size_t k) {
            CVector ideal = inputs[k];
            for (int t = 0; t < repetitions; ++t) {
                step.apply(ideal);
            }
            const auto rec = engine.run_program(pxp::embed_data_state(engine.basis(), n, inputs[k]), program);
            const CVector got = pxp::project_data_state(rec.state, n);
            fid[k] = std::norm(kernels::dot(ideal, got));
            leak[k] = rec.leakage.empty() ? 0.0 : *std::max_element(rec.leakage.begin(), rec.leakage.end());
        },
        options.threads);
    out.states = inputs.size();
    out.fidelity = *std::min_element(fid.begin(), fid.end());
    out.leakage = *std::max_element(leak.begin(), leak.end());
    out.leakage_failure = out.leakage > options.leakage_tol;
    return out;
}

EffectiveHamiltonian floquet_effective_h(const QcaModel &model) {
    const auto layers = model_layers(model);
    const std::size_t n = lattice::build_graph(model.lattice).size();
    if (n > 10) {
        throw ResourceError("effective Hamiltonian limited to 10 data qubits, got " + std::to_string(n));
    }
    EffectiveHamiltonian eh;
    const Eigen::Index dim = Eigen::Index{1} << n;
    eh.h_sum = CMatrix::Zero(dim, dim);
    eh.correction = CMatrix::Zero(dim, dim);
    for (const auto &l : layers) {
        eh.layers.push_back(layer_hamiltonian(l, n).to_matrix());
        eh.h_sum += eh.layers.back();
    }
    const Complex f(0.0, -0.5 * model.tau);
    for (std::size_t j = 0; j < eh.layers.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            CMatrix c = f * (eh.layers[j] * eh.layers[k] - eh.layers[k] * eh.layers[j]);
            eh.correction += c;
            eh.pairwise.emplace_back(j, k, std::move(c));
        }
    }
    return eh;
}

std::vector<std::size_t> light_cone(const QcaModel &model, std::size_t site, int steps) {
    const auto layers = model_layers(model);
    const std::size_t n = lattice::build_graph(model.lattice).size();
    if (site >= n) {
        throw DomainError("light-cone site out of range");
    }
    std::vector<bool> in(n, false);
    in[site] = true;
    for (int t = 0; t < steps; ++t) {
        for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
            std::vector<bool> next = in;
            for (const auto &[a, b, j] : it->couplings) {
                if (in[a] || in[b]) {
                    next[a] = next[b] = true;
                }
            }
            in = std::move(next);
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (in[i]) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace rydqca::compiler
