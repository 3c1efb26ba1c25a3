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
// Batch front-end: JSON config in, CSV/JSON artifacts and a manifest out.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rydqca/chaos.hpp"
#include "rydqca/compiler.hpp"
#include "rydqca/control.hpp"
#include "rydqca/errors.hpp"
#include "rydqca/io.hpp"
#include "rydqca/lattice.hpp"

using namespace rydqca;
using io::Json;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumeric = 3, kResource = 4 };

struct Run {
    std::string command;
    Json config;
    std::filesystem::path out;
    std::size_t threads = 0;
    std::optional<bool> physical;
    std::vector<std::string> outputs;
    std::map<std::string, std::uint64_t> seeds;

    std::string path(const std::string &name) {
        outputs.push_back(name);
        return (out / name).string();
    }
    void finish() const {
        io::write_json((out / "manifest.json").string(), io::make_manifest(command, config, seeds, outputs));
    }
};

template <class T>
T get_or(const Json &j, const char *key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

const Json &require(const Json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw ConfigError(where + ": missing key '" + key + "'");
    }
    return j.at(key);
}

/// A list of doubles or {"start", "stop", "step"} (descending allowed).
std::vector<double> number_list(const Json &j, const std::string &where) {
    std::vector<double> v;
    if (j.is_array()) {
        for (const auto &x : j) {
            v.push_back(x.get<double>());
        }
    } else {
        io::reject_unknown_keys(j, {"start", "stop", "step"}, where);
        const double a = require(j, "start", where).get<double>();
        const double b = require(j, "stop", where).get<double>();
        const double s = std::abs(require(j, "step", where).get<double>());
        if (!(s > 0.0)) {
            throw ConfigError(where + ": step must be positive");
        }
        const double dir = b >= a ? 1.0 : -1.0;
        const auto n = static_cast<long>(std::floor(std::abs(b - a) / s + 1e-9));
        for (long k = 0; k <= n; ++k) {
            v.push_back(a + dir * s * static_cast<double>(k));
        }
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw ConfigError(where + ": non-finite value");
        }
    }
    return v;
}

void check_object(const Json &j, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
}

// compile / verify

struct CompileSettings {
    compiler::CompileOptions options;
    std::vector<int> repetitions;
    compiler::VerifyOptions verify;
    double threshold = 1.0 - 1e-6;
};

CompileSettings compile_settings(Run &run, bool verify_required) {
    const Json &c = run.config;
    CompileSettings s;
    if (c.contains("compile")) {
        const Json &o = c.at("compile");
        check_object(o, "compile");
        io::reject_unknown_keys(o, {"physical", "omega", "grape_T", "grape_t_grid", "grape_M", "grape_threshold",
                                    "restarts", "seed"},
                                "compile");
        s.options.physical = get_or(o, "physical", false);
        s.options.omega = get_or(o, "omega", 1.0);
        if (o.contains("grape_T")) {
            s.options.grape_T = o.at("grape_T").get<double>();
        }
        if (o.contains("grape_t_grid")) {
            s.options.grape_t_grid = number_list(o.at("grape_t_grid"), "compile.grape_t_grid");
            if (s.options.grape_t_grid.empty()) {
                throw ConfigError("compile.grape_t_grid is empty");
            }
        }
        s.options.grape_M = get_or(o, "grape_M", 100);
        s.options.grape_threshold = get_or(o, "grape_threshold", 1e-10);
        s.options.scan.restarts = get_or(o, "restarts", s.options.scan.restarts);
        s.options.scan.grape.seed = get_or(o, "seed", s.options.scan.grape.seed);
    }
    if (run.physical) {
        s.options.physical = *run.physical;
    }
    run.config["compile"]["physical"] = s.options.physical;
    run.seeds["grape"] = s.options.scan.grape.seed;

    s.repetitions = {1};
    if (c.contains("verify")) {
        const Json &v = c.at("verify");
        check_object(v, "verify");
        io::reject_unknown_keys(v, {"repetitions", "random_states", "seed", "leakage_tol"}, "verify");
        if (v.contains("repetitions")) {
            const Json &r = v.at("repetitions");
            s.repetitions = r.is_array() ? r.get<std::vector<int>>() : std::vector<int>{r.get<int>()};
        }
        s.verify.random_states = get_or(v, "random_states", s.verify.random_states);
        s.verify.seed = get_or(v, "seed", s.verify.seed);
        s.verify.leakage_tol = get_or(v, "leakage_tol", s.verify.leakage_tol);
    } else if (verify_required) {
        throw ConfigError("verify: missing 'verify' block");
    }
    for (int r : s.repetitions) {
        if (r < 0) {
            throw ConfigError("verify.repetitions must be >= 0");
        }
    }
    s.verify.threads = run.threads;
    run.seeds["verify"] = s.verify.seed;
    s.threshold = get_or(c, "threshold", s.threshold);
    return s;
}

int cmd_compile(Run &run, bool verify_command) {
    io::reject_unknown_keys(run.config, {"model", "compile", "verify", "threshold", "output_dir"}, "config");
    const auto model = io::model_from_json(require(run.config, "model", "config"));
    auto s = compile_settings(run, verify_command);

    compiler::CompilationReport report;
    try {
        report = compiler::compile(model, s.options);
    } catch (const compiler::CompileError &e) {
        io::write_json(run.path("grape_scan.json"), io::to_json(e.scan()));
        run.finish();
        throw;
    }
    if (!verify_command) {
        io::write_json(run.path("circuit.json"), io::to_json(report.circuit));
        io::write_json(run.path("program.json"), io::to_json(report.program));
        io::write_json(run.path("array.json"), io::to_json(report.array));
    }

    io::CsvTable table({"repetitions", "fidelity", "infidelity", "leakage", "states", "basis_dimension"});
    Json verify_json = Json::array();
    double worst = 1.0;
    bool leak = false;
    for (int r : s.repetitions) {
        if (r == 0) {
            continue;
        }
        const auto v = compiler::verify(report, r, s.verify);
        worst = std::min(worst, v.fidelity);
        leak = leak || v.leakage_failure;
        table.add_row({static_cast<long long>(r), v.fidelity, 1.0 - v.fidelity, v.leakage,
                       static_cast<long long>(v.states), static_cast<long long>(v.basis_dimension)});
        verify_json.push_back(io::to_json(v));
    }
    if (table.rows() > 0) {
        report.fidelity = worst;
        table.write(run.path("verify.csv"));
    }
    Json rep = io::report_json(report);
    rep["verify"] = verify_json;
    rep["threshold"] = s.threshold;
    io::write_json(run.path("report.json"), rep);
    run.finish();

    std::printf("%s %s: %zu segments/step, %zu ancilla pulses/step", model.variant_name().c_str(),
                io::model_hash(model).c_str(), report.segments_per_step, report.ancilla_pulses_per_step);
    if (table.rows() > 0) {
        std::printf(", worst fidelity %s (threshold %s)", io::format_double(worst).c_str(),
                    io::format_double(s.threshold).c_str());
    }
    std::printf("\n");
    if (leak) {
        std::fprintf(stderr, "error: ancilla leakage above tolerance\n");
        return kNumeric;
    }
    if (table.rows() > 0 && worst < s.threshold) {
        std::fprintf(stderr, "error: fidelity %s below threshold %s\n", io::format_double(worst).c_str(),
                     io::format_double(s.threshold).c_str());
        return kNumeric;
    }
    return kOk;
}

// grape-scan

int cmd_grape_scan(Run &run) {
    const Json &c = run.config;
    io::reject_unknown_keys(c, {"sizes", "target_phases", "omega", "M", "threshold", "t_grid", "restarts",
                                "resolution", "bisect", "seed", "phase_scan", "check_negative", "output_dir"},
                            "config");
    control::GrapeProblem p;
    p.sizes = require(c, "sizes", "config").get<std::vector<int>>();
    p.target_phases = require(c, "target_phases", "config").get<std::vector<double>>();
    p.omega = get_or(c, "omega", 1.0);
    p.M = get_or(c, "M", 100);
    p.threshold = get_or(c, "threshold", 1e-10);
    p.validate();
    const auto grid = number_list(require(c, "t_grid", "config"), "t_grid");
    if (grid.empty()) {
        throw ConfigError("t_grid is empty");
    }
    control::ScanOptions so;
    so.restarts = get_or(c, "restarts", so.restarts);
    so.resolution = get_or(c, "resolution", so.resolution);
    so.bisect = get_or(c, "bisect", so.bisect);
    so.grape.seed = get_or(c, "seed", so.grape.seed);
    run.seeds["grape"] = so.grape.seed;

    const auto scan = control::time_optimal_scan(p, grid, so);
    io::CsvTable curve({"T", "error", "feasible"});
    for (const auto &pt : scan.curve) {
        curve.add_row({pt.T, pt.error, static_cast<long long>(pt.feasible)});
    }
    curve.write(run.path("err_vs_T.csv"));
    Json scan_json = io::to_json(scan);
    if (scan.feasible) {
        Json pulse{{"M", p.M},
                   {"dt", scan.t_min / p.M},
                   {"T", scan.t_min},
                   {"omega", p.omega},
                   {"sizes", p.sizes},
                   {"target_phases", p.target_phases},
                   {"error", scan.error_at_t_min},
                   {"xi", std::vector<double>(scan.xi_at_t_min.begin(), scan.xi_at_t_min.end())}};
        io::write_json(run.path("pulse.json"), pulse);
    }
    io::write_json(run.path("scan.json"), scan_json);
    std::printf("T_min %s error %s feasible %d\n", io::format_double(scan.t_min).c_str(),
                io::format_double(scan.error_at_t_min).c_str(), static_cast<int>(scan.feasible));

    int rc = scan.feasible ? kOk : kNumeric;
    if (c.contains("phase_scan")) {
        const Json &ps = c.at("phase_scan");
        check_object(ps, "phase_scan");
        io::reject_unknown_keys(ps, {"target_index", "phis"}, "phase_scan");
        const auto idx = get_or<std::size_t>(ps, "target_index", p.sizes.size() - 1);
        if (idx >= p.sizes.size()) {
            throw ConfigError("phase_scan.target_index out of range");
        }
        const auto phis = number_list(require(ps, "phis", "phase_scan"), "phase_scan.phis");
        if (phis.empty()) {
            throw ConfigError("phase_scan.phis is empty");
        }
        const auto pts = control::phase_scan(p, idx, phis, grid, so, run.threads);
        io::CsvTable t({"phi", "t_min", "error", "feasible", "t_min_forward", "t_min_backward"});
        for (const auto &pt : pts) {
            t.add_row({pt.phi, pt.t_min, pt.error, static_cast<long long>(pt.feasible), pt.t_min_forward,
                       pt.t_min_backward});
        }
        t.write(run.path("t_min_vs_phi.csv"));
    }
    if (get_or(c, "check_negative", false)) {
        const auto m = control::mirror_scan(p, grid, so);
        io::write_json(run.path("negative_check.json"),
                       Json{{"plus", io::to_json(m.plus)},
                            {"minus", io::to_json(m.minus)},
                            {"t_min_plus_raw", m.t_min_plus_raw},
                            {"t_min_minus_raw", m.t_min_minus_raw},
                            {"mirror_error", m.mirror_error}});
        std::printf("T_min(+phi) %s T_min(-phi) %s (independent %s / %s)\n",
                    io::format_double(m.plus.t_min).c_str(), io::format_double(m.minus.t_min).c_str(),
                    io::format_double(m.t_min_plus_raw).c_str(), io::format_double(m.t_min_minus_raw).c_str());
        if (m.plus.feasible != m.minus.feasible || m.plus.t_min != m.minus.t_min) {
            std::fprintf(stderr, "error: T_min differs under phi -> -phi\n");
            rc = kNumeric;
        }
    }
    run.finish();
    return rc;
}

// chaos

std::vector<compiler::QcaModel> chaos_models(const Json &c) {
    std::vector<compiler::QcaModel> models;
    if (c.contains("model") == c.contains("models")) {
        throw ConfigError("config: give exactly one of 'model' or 'models'");
    }
    if (c.contains("model")) {
        models.push_back(io::model_from_json(c.at("model")));
    } else {
        if (!c.at("models").is_array() || c.at("models").empty()) {
            throw ConfigError("config: 'models' must be a non-empty array");
        }
        for (const auto &m : c.at("models")) {
            models.push_back(io::model_from_json(m));
        }
    }
    return models;
}

chaos::Observable observable_from(const Json &j) {
    check_object(j, "observable");
    io::reject_unknown_keys(j, {"letter", "sites"}, "observable");
    const auto letter = require(j, "letter", "observable").get<std::string>();
    if (letter.size() != 1) {
        throw ConfigError("observable.letter must be one of X, Y, Z");
    }
    return {letter[0], require(j, "sites", "observable").get<std::vector<std::size_t>>()};
}

int cmd_chaos(Run &run) {
    const Json &c = run.config;
    io::reject_unknown_keys(c, {"model", "models", "observable", "mode", "t_max", "samples", "batches", "seed",
                                "shots", "histogram", "output_dir"},
                            "config");
    const auto models = chaos_models(c);
    const auto o = observable_from(require(c, "observable", "config"));
    const auto mode = get_or<std::string>(c, "mode", "sample");
    const int t_max = require(c, "t_max", "config").get<int>();
    if (t_max < 0) {
        throw ConfigError("t_max must be >= 0");
    }

    io::CsvTable g({"t", "g", "uncertainty", "N_s", "model_hash"});
    if (mode == "sample") {
        chaos::GOptions go;
        go.t_max = t_max;
        go.samples = get_or(c, "samples", go.samples);
        go.batches = get_or(c, "batches", go.batches);
        go.seed = get_or(c, "seed", go.seed);
        if (c.contains("shots")) {
            go.shots = c.at("shots").get<int>();
        }
        go.threads = run.threads;
        run.seeds["samples"] = go.seed;
        std::size_t bins = 0;
        std::vector<int> hist_times;
        if (c.contains("histogram")) {
            const Json &h = c.at("histogram");
            check_object(h, "histogram");
            io::reject_unknown_keys(h, {"bins", "times"}, "histogram");
            bins = get_or<std::size_t>(h, "bins", 40);
            hist_times = require(h, "times", "histogram").get<std::vector<int>>();
            for (int t : hist_times) {
                if (t < 0 || t > t_max) {
                    throw ConfigError("histogram.times must lie in [0, t_max]");
                }
            }
            if (bins == 0) {
                throw ConfigError("histogram.bins must be positive");
            }
            go.keep_values = true;
        }
        io::CsvTable hist({"model_hash", "t", "bin_lo", "bin_hi", "count"});
        for (const auto &m : models) {
            const auto est = chaos::estimate_g(m, o, go);
            const auto hash = io::model_hash(m);
            for (std::size_t i = 0; i < est.times.size(); ++i) {
                g.add_row({static_cast<long long>(est.times[i]), est.g[i], est.uncertainty[i],
                           static_cast<long long>(est.samples), hash});
            }
            for (int t : hist_times) {
                const auto h = chaos::histogram(est.values[static_cast<std::size_t>(t)], bins);
                const double w = (h.hi - h.lo) / static_cast<double>(bins);
                for (std::size_t b = 0; b < bins; ++b) {
                    hist.add_row({hash, static_cast<long long>(t), h.lo + w * static_cast<double>(b),
                                  h.lo + w * static_cast<double>(b + 1), static_cast<long long>(h.counts[b])});
                }
            }
        }
        if (!hist_times.empty()) {
            hist.write(run.path("histograms.csv"));
        }
    } else if (mode == "exact") {
        io::CsvTable sizes({"model_hash", "t", "weight", "probability"});
        for (const auto &m : models) {
            const auto hash = io::model_hash(m);
            const auto dists = chaos::exact_size_distributions(m, o, t_max);
            for (std::size_t t = 0; t < dists.size(); ++t) {
                g.add_row({static_cast<long long>(t), dists[t].g(), 0.0, 0LL, hash});
                for (std::size_t l = 0; l < dists[t].p.size(); ++l) {
                    sizes.add_row({hash, static_cast<long long>(t), static_cast<long long>(l), dists[t].p[l]});
                }
            }
        }
        sizes.write(run.path("sizes.csv"));
    } else if (mode == "clifford") {
        io::CsvTable strings({"model_hash", "t", "weight", "g", "pauli"});
        for (const auto &m : models) {
            const auto hash = io::model_hash(m);
            const auto tr = chaos::clifford_pauli_weights(m, o, t_max);
            for (std::size_t t = 0; t < tr.g.size(); ++t) {
                g.add_row({static_cast<long long>(t), tr.g[t], 0.0, 0LL, hash});
                strings.add_row({hash, static_cast<long long>(t), static_cast<long long>(tr.weights[t]), tr.g[t],
                                 tr.strings[t].to_string()});
            }
        }
        strings.write(run.path("clifford.csv"));
    } else {
        throw ConfigError("mode must be sample, exact or clifford, got '" + mode + "'");
    }
    g.write(run.path("g.csv"));
    run.finish();
    std::printf("%zu rows written to %s\n", g.rows(), (run.out / "g.csv").string().c_str());
    return kOk;
}

// audit

int cmd_audit(Run &run) {
    const Json &c = run.config;
    io::reject_unknown_keys(c, {"lattice", "gadgets", "s_max", "reference_chain", "exponent", "output_dir"},
                            "config");
    lattice::AuditOptions ao;
    ao.exponent = get_or(c, "exponent", ao.exponent);
    io::CsvTable t({"item", "atoms", "ratio_dominant_shell", "ratio_all_pairs", "worst_pair_distance"});
    Json out = Json::object();
    auto add = [&](const std::string &name, const lattice::AtomArray &arr, const lattice::AuditOptions &opt) {
        if (arr.size() == 0) {
            throw ConfigError(name + ": empty atom array");
        }
        const auto a = lattice::blockade_audit(arr, opt);
        t.add_row({name, static_cast<long long>(arr.size()), a.ratio_unwanted_over_blockade, a.ratio_all_pairs,
                   a.worst_pair_distance});
        out[name] = io::to_json(a);
        std::printf("%s: %s\n", name.c_str(), io::format_double(a.ratio_unwanted_over_blockade).c_str());
    };
    if (!c.contains("lattice") && !c.contains("reference_chain")) {
        throw ConfigError("config: nothing to audit (give 'lattice' and/or 'reference_chain')");
    }
    if (c.contains("lattice")) {
        const auto spec = io::lattice_from_json(c.at("lattice"));
        auto ga = lattice::GadgetAssignment::uniform(spec.family, 1);
        if (c.contains("gadgets")) {
            ga.sizes = c.at("gadgets").get<std::map<std::string, int>>();
        }
        ga.s_max = get_or(c, "s_max", ga.s_max);
        const auto arr = lattice::build_array(spec, ga);
        add("array", arr, ao);
        io::write_json(run.path("array.json"), io::to_json(arr));
    }
    if (c.contains("reference_chain")) {
        const Json &r = c.at("reference_chain");
        check_object(r, "reference_chain");
        io::reject_unknown_keys(r, {"length", "boundary"}, "reference_chain");
        const auto b = get_or<std::string>(r, "boundary", "open");
        if (b != "open" && b != "periodic") {
            throw ConfigError("reference_chain.boundary must be open or periodic");
        }
        auto opt = ao;
        opt.inter_species_only = false;
        add("reference_chain",
            lattice::reference_pxp_chain(require(r, "length", "reference_chain").get<std::size_t>(),
                                         b == "open" ? lattice::Boundary::Open : lattice::Boundary::Periodic),
            opt);
    }
    t.write(run.path("audit.csv"));
    io::write_json(run.path("audit.json"), out);
    run.finish();
    return kOk;
}

// moments

int cmd_moments(Run &run) {
    const Json &c = run.config;
    io::reject_unknown_keys(c, {"k_max", "output_dir"}, "config");
    const int k_max = get_or(c, "k_max", 4);
    if (k_max < 1 || k_max > 8) {
        throw ConfigError("k_max must be in [1, 8]");
    }
    io::CsvTable t({"k", "dist_haar", "dist_closed_form"});
    for (int k = 1; k <= k_max; ++k) {
        const CMatrix m = chaos::tetra_moment(k);
        const double dh = (m - chaos::haar_moment(k)).norm();
        if (k <= 4) {
            t.add_row({static_cast<long long>(k), dh, (m - chaos::tetra_moment_closed_form(k)).norm()});
        } else {
            t.add_row({static_cast<long long>(k), dh, std::string()});
        }
    }
    t.write(run.path("moments.csv"));
    run.finish();
    std::printf("%s", t.str().c_str());
    return kOk;
}

/// A manifest is accepted in place of a config and replays its config block.
Json load_config(const std::string &path, const std::string &command) {
    Json j = io::read_json(path);
    check_object(j, "config");
    if (j.contains("config") && j.contains("version") && j.contains("command")) {
        if (j.at("command").get<std::string>() != command) {
            throw ConfigError("manifest was written by '" + j.at("command").get<std::string>() + "', not '" +
                              command + "'");
        }
        return j.at("config");
    }
    return j;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Rydberg quantum cellular automata: compile, verify, GRAPE scans, chaos diagnostics"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: RYDQCA_THREADS, else all cores)")
        ->check(CLI::PositiveNumber);

    std::string config_path, out_dir;
    bool physical = false, exact = false;
    struct Cmd {
        const char *name;
        const char *help;
        bool singles;
    };
    const std::vector<Cmd> cmds{
        {"compile", "Compile a model to circuit and pulse artifacts, then verify", true},
        {"verify", "Compile and verify over several repetitions", true},
        {"grape-scan", "Err_min(T) and T_min(phi) curves for mixed-size gadgets", false},
        {"chaos", "g(t) for a QCA model by sampling, exact sizes or the Clifford oracle", false},
        {"audit", "Blockade audit of an atom array", false},
        {"moments", "Tetrahedral moment operators vs closed forms and Haar", false},
    };
    for (const auto &cmd : cmds) {
        auto *sub = app.add_subcommand(cmd.name, cmd.help);
        sub->fallthrough();
        sub->add_option("-c,--config", config_path, "JSON config or a manifest from a previous run")->required();
        sub->add_option("-o,--out", out_dir, "Output directory (default: config output_dir, else .)");
        if (cmd.singles) {
            auto *p = sub->add_flag("--physical", physical, "Realize single-qubit layers as global data pulses");
            auto *e = sub->add_flag("--exact-singles", exact, "Apply single-qubit layers as exact local unitaries");
            p->excludes(e);
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }

    Run run;
    run.command = app.get_subcommands().front()->get_name();
    run.threads = threads;
    if (physical) {
        run.physical = true;
    } else if (exact) {
        run.physical = false;
    }
    try {
        run.config = load_config(config_path, run.command);
        if (out_dir.empty()) {
            out_dir = get_or<std::string>(run.config, "output_dir", ".");
        }
        run.out = out_dir;
        std::filesystem::create_directories(run.out);
        if (run.command == "compile") {
            return cmd_compile(run, false);
        }
        if (run.command == "verify") {
            return cmd_compile(run, true);
        }
        if (run.command == "grape-scan") {
            return cmd_grape_scan(run);
        }
        if (run.command == "chaos") {
            return cmd_chaos(run);
        }
        if (run.command == "audit") {
            return cmd_audit(run);
        }
        return cmd_moments(run);
    } catch (const ResourceError &e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return kResource;
    } catch (const NumericError &e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kNumeric;
    } catch (const Error &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const nlohmann::json::exception &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const std::filesystem::filesystem_error &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    }
}
