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
#include "rydqca/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "rydqca/errors.hpp"
#include "rydqca/kernels/kernels.hpp"

namespace rydqca::io {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double number(const Json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw ConfigError(where + ": missing key '" + key + "'");
    }
    const auto &v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(where + ": '" + key + "' must be a number");
    }
    return v.get<double>();
}

double number_or(const Json &j, const char *key, double fallback, const std::string &where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

std::array<double, 3> triple(const Json &j, const char *key, const std::string &where) {
    std::array<double, 3> out{};
    if (!j.contains(key)) {
        return out;
    }
    const auto &v = j.at(key);
    if (!v.is_array() || v.size() != 3) {
        throw ConfigError(where + ": '" + key + "' must be an array [x, y, z]");
    }
    for (std::size_t a = 0; a < 3; ++a) {
        if (!v[a].is_number()) {
            throw ConfigError(where + ": '" + key + "' entries must be numbers");
        }
        out[a] = v[a].get<double>();
    }
    return out;
}

const char *family_name(lattice::Family f) {
    switch (f) {
    case lattice::Family::Chain:
        return "chain";
    case lattice::Family::Square:
        return "square";
    default:
        return "honeycomb";
    }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

} // namespace

void reject_unknown_keys(const Json &obj, std::initializer_list<const char *> allowed,
                         const std::string &where) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &[key, _] : obj.items()) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

lattice::LatticeSpec lattice_from_json(const Json &j) {
    reject_unknown_keys(j, {"family", "extent", "boundary", "trim_dangling"}, "lattice");
    lattice::LatticeSpec s;
    const std::string fam = j.value("family", std::string("chain"));
    if (fam == "chain") {
        s.family = lattice::Family::Chain;
    } else if (fam == "square") {
        s.family = lattice::Family::Square;
    } else if (fam == "honeycomb") {
        s.family = lattice::Family::Honeycomb;
    } else {
        throw ConfigError("lattice: unknown family '" + fam + "'");
    }
    if (!j.contains("extent") || !j.at("extent").is_array()) {
        throw ConfigError("lattice: 'extent' must be an array of integers");
    }
    for (const auto &e : j.at("extent")) {
        if (!e.is_number_integer()) {
            throw ConfigError("lattice: 'extent' entries must be integers");
        }
        s.extent.push_back(e.get<int>());
    }
    const std::string bnd = j.value("boundary", std::string("open"));
    if (bnd == "open") {
        s.boundary = lattice::Boundary::Open;
    } else if (bnd == "periodic") {
        s.boundary = lattice::Boundary::Periodic;
    } else {
        throw ConfigError("lattice: boundary must be 'open' or 'periodic'");
    }
    s.trim_dangling = j.value("trim_dangling", false);
    s.validate();
    return s;
}

Json to_json(const lattice::LatticeSpec &spec) {
    return Json{{"family", family_name(spec.family)},
                {"extent", spec.extent},
                {"boundary", spec.boundary == lattice::Boundary::Open ? "open" : "periodic"},
                {"trim_dangling", spec.trim_dangling}};
}

compiler::QcaModel model_from_json(const Json &j) {
    reject_unknown_keys(j, {"variant", "tau", "params", "lattice"}, "model");
    compiler::QcaModel m;
    if (!j.contains("variant") || !j.at("variant").is_string()) {
        throw ConfigError("model: 'variant' must be a string");
    }
    const std::string v = j.at("variant").get<std::string>();
    m.tau = number_or(j, "tau", 1.0, "model");
    const Json p = j.value("params", Json::object());
    if (!j.contains("lattice")) {
        throw ConfigError("model: missing key 'lattice'");
    }
    m.lattice = lattice_from_json(j.at("lattice"));
    if (v == "KickedIsing") {
        reject_unknown_keys(p, {"J", "h", "b"}, "model.params");
        m.params = compiler::KickedIsing{number_or(p, "J", 0, "params"), number_or(p, "h", 0, "params"),
                                         number_or(p, "b", 0, "params")};
    } else if (v == "InhomKickedIsing") {
        reject_unknown_keys(p, {"J_x", "J_y", "h", "b"}, "model.params");
        m.params = compiler::InhomKickedIsing{number_or(p, "J_x", 0, "params"), number_or(p, "J_y", 0, "params"),
                                              number_or(p, "h", 0, "params"), number_or(p, "b", 0, "params")};
    } else if (v == "KitaevFloquet") {
        reject_unknown_keys(p, {"J", "h"}, "model.params");
        m.params = compiler::KitaevFloquet{triple(p, "J", "model.params"), triple(p, "h", "model.params")};
    } else if (v == "TwoLocal") {
        reject_unknown_keys(p, {"c", "h"}, "model.params");
        m.params = compiler::TwoLocal{triple(p, "c", "model.params"), triple(p, "h", "model.params")};
    } else {
        throw ConfigError("model: unknown variant '" + v + "'");
    }
    m.validate();
    return m;
}

Json to_json(const compiler::QcaModel &model) {
    Json params = std::visit(
        overloaded{
            [](const compiler::KickedIsing &k) { return Json{{"J", k.J}, {"h", k.h}, {"b", k.b}}; },
            [](const compiler::InhomKickedIsing &k) {
                return Json{{"J_x", k.J_x}, {"J_y", k.J_y}, {"h", k.h}, {"b", k.b}};
            },
            [](const compiler::KitaevFloquet &k) { return Json{{"J", k.J}, {"h", k.h}}; },
            [](const compiler::TwoLocal &k) { return Json{{"c", k.c}, {"h", k.h}}; },
        },
        model.params);
    return Json{{"variant", model.variant_name()},
                {"tau", model.tau},
                {"params", params},
                {"lattice", to_json(model.lattice)}};
}

std::string model_hash(const compiler::QcaModel &model) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(model).dump()) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json to_json(const CMatrix2 &u) {
    return Json::array({Json::array({complex_json(u(0, 0)), complex_json(u(0, 1))}),
                        Json::array({complex_json(u(1, 0)), complex_json(u(1, 1))})});
}

Json to_json(const lattice::AtomArray &array) {
    Json atoms = Json::array();
    for (const auto &a : array.atoms) {
        Json ja{{"id", a.id},
                {"x", a.position.x},
                {"y", a.position.y},
                {"species", a.species == lattice::Species::Data ? "data" : "ancilla"}};
        if (a.gadget) {
            ja["gadget"] = *a.gadget;
        }
        atoms.push_back(ja);
    }
    Json gadgets = Json::array();
    for (const auto &g : array.gadgets) {
        gadgets.push_back(Json{{"bond", g.bond},
                               {"class", g.bond_class},
                               {"data", {g.data_a, g.data_b}},
                               {"ancillas", g.ancillas}});
    }
    Json edges = Json::array();
    for (const auto &[a, b] : array.blockade_edges) {
        edges.push_back({a, b});
    }
    return Json{{"n_data", array.n_data}, {"atoms", atoms}, {"gadgets", gadgets}, {"blockade_edges", edges}};
}

Json to_json(const lattice::BlockadeAudit &audit) {
    Json j{{"ratio_unwanted_over_blockade", audit.ratio_unwanted_over_blockade},
           {"ratio_all_pairs", audit.ratio_all_pairs},
           {"worst_pair_distance", audit.worst_pair_distance}};
    if (audit.worst_pair) {
        j["worst_pair"] = {audit.worst_pair->first, audit.worst_pair->second};
    }
    return j;
}

Json to_json(const pxp::PulseProgram &program) {
    Json segs = Json::array();
    for (const auto &s : program.segments) {
        if (const auto *p = std::get_if<pxp::PulseSegment>(&s)) {
            Json j{{"type", "pulse"},
                   {"species", p->species == lattice::Species::Data ? "data" : "ancilla"},
                   {"rabi", p->rabi},
                   {"duration", p->duration},
                   {"detuning", p->detuning},
                   {"frozen", p->frozen}};
            if (const auto *lin = std::get_if<pxp::LinearPhase>(&p->phase)) {
                j["phase"] = Json{{"kind", "linear"}, {"xi0", lin->xi0}, {"slope", lin->slope}};
            } else {
                const auto &pw = std::get<pxp::PiecewisePhase>(p->phase);
                j["phase"] = Json{{"kind", "piecewise"}, {"dt", pw.dt}, {"values", pw.values}};
            }
            segs.push_back(j);
        } else {
            Json ops = Json::array();
            for (const auto &[atom, u] : std::get<pxp::LocalUnitarySegment>(s).ops) {
                ops.push_back(Json{{"atom", atom}, {"u", to_json(u)}});
            }
            segs.push_back(Json{{"type", "local_unitary"}, {"ops", ops}});
        }
    }
    return Json{{"n_atoms", program.n_atoms}, {"segments", segs}};
}

Json to_json(const compiler::GateCircuit &circuit) {
    Json layers = Json::array();
    for (const auto &layer : circuit.layers) {
        Json jl = Json::array();
        for (const auto &g : layer) {
            if (const auto *s = std::get_if<compiler::SingleQubitGate>(&g)) {
                jl.push_back(Json{{"gate", "u"}, {"qubit", s->qubit}, {"matrix", to_json(s->u)}});
            } else {
                const auto &cz = std::get<compiler::CzGate>(g);
                jl.push_back(Json{{"gate", "cz"}, {"qubits", {cz.a, cz.b}}, {"phi", cz.phi}});
            }
        }
        layers.push_back(jl);
    }
    return Json{{"n_qubits", circuit.n_qubits}, {"layers", layers}};
}

Json to_json(const compiler::VerifyReport &r) {
    return Json{{"fidelity", r.fidelity},
                {"infidelity", 1.0 - r.fidelity},
                {"leakage", r.leakage},
                {"leakage_failure", r.leakage_failure},
                {"states", r.states},
                {"repetitions", r.repetitions},
                {"basis_dimension", r.basis_dimension}};
}

Json to_json(const control::ScanResult &scan) {
    Json curve = Json::array();
    for (const auto &p : scan.curve) {
        curve.push_back(Json{{"T", p.T}, {"error", p.error}, {"feasible", p.feasible}});
    }
    return Json{{"feasible", scan.feasible},
                {"t_min", scan.t_min},
                {"error_at_t_min", scan.error_at_t_min},
                {"best_error", scan.best_error},
                {"xi", std::vector<double>(scan.xi_at_t_min.begin(), scan.xi_at_t_min.end())},
                {"curve", curve}};
}

Json to_json(const control::ControllabilityCertificate &c) {
    return Json{{"sizes", c.sizes},
                {"vandermonde_det", c.vandermonde_det},
                {"vandermonde_det_lu", c.vandermonde_det_lu},
                {"lie_dimension", c.lie_dimension},
                {"target_dimension", c.target_dimension},
                {"controllable", c.controllable}};
}

Json report_json(const compiler::CompilationReport &r) {
    Json pulses = Json::array();
    for (const auto &g : r.gadget_pulses) {
        Json phases = Json::object();
        for (const auto &[s, phi] : g.phases) {
            phases[std::to_string(s)] = phi;
        }
        Json jp{{"method", g.method}, {"phases", phases}, {"duration", g.duration}, {"error", g.error}};
        if (g.scan) {
            jp["scan"] = to_json(*g.scan);
        }
        pulses.push_back(jp);
    }
    Json assignment = Json::object();
    for (const auto &[k, v] : r.assignment.sizes) {
        assignment[k] = v;
    }
    Json j{{"model", to_json(r.model)},
           {"model_hash", model_hash(r.model)},
           {"physical", r.physical},
           {"omega", r.omega},
           {"n_data", r.array.n_data},
           {"n_atoms", r.array.size()},
           {"gadget_sizes", assignment},
           {"sizes_used", r.sizes_used},
           {"stages_per_step", r.stages.size()},
           {"segments_per_step", r.segments_per_step},
           {"ancilla_pulses_per_step", r.ancilla_pulses_per_step},
           {"gadget_pulses", pulses}};
    if (r.fidelity) {
        j["fidelity"] = *r.fidelity;
    }
    return j;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) {
        throw DomainError("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                          std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        os << (i ? "," : "") << header_[i];
    }
    os << '\n';
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "");
            std::visit(overloaded{[&](double d) { os << format_double(d); },
                                  [&](long long v) { os << v; },
                                  [&](const std::string &s) { os << s; }},
                       row[i]);
        }
        os << '\n';
    }
    return os.str();
}

void CsvTable::write(const std::string &path) const { write_text(path, str()); }

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_json(const std::string &path, const Json &j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << text;
}

Json make_manifest(const std::string &command, const Json &config,
                   const std::map<std::string, std::uint64_t> &seeds,
                   const std::vector<std::string> &outputs) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    Json s = Json::object();
    for (const auto &[k, v] : seeds) {
        s[k] = v;
    }
    return Json{{"command", command},
                {"version", kVersion},
                {"kernels", std::string(kernels::active_name())},
                {"timestamp", stamp},
                {"seeds", s},
                {"config", config},
                {"outputs", outputs}};
}

} // namespace rydqca::io
