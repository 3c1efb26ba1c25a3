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

// JSON artifacts, strict config parsing, CSV tables and run manifests.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rydqca/compiler.hpp"
#include "rydqca/control.hpp"
#include "rydqca/lattice.hpp"
#include "rydqca/pxp_engine.hpp"

namespace rydqca::io {

using Json = nlohmann::ordered_json;

inline constexpr const char *kVersion = "0.1.0";

/// Throws ConfigError naming the first key of `obj` not in `allowed`.
void reject_unknown_keys(const Json &obj, std::initializer_list<const char *> allowed,
                         const std::string &where);

lattice::LatticeSpec lattice_from_json(const Json &j);
Json to_json(const lattice::LatticeSpec &spec);

compiler::QcaModel model_from_json(const Json &j);
Json to_json(const compiler::QcaModel &model);
/// FNV-1a of the canonical model JSON, 16 hex digits.
std::string model_hash(const compiler::QcaModel &model);

Json to_json(const CMatrix2 &u);
Json to_json(const lattice::AtomArray &array);
Json to_json(const lattice::BlockadeAudit &audit);
Json to_json(const pxp::PulseProgram &program);
Json to_json(const compiler::GateCircuit &circuit);
Json to_json(const compiler::VerifyReport &report);
Json to_json(const control::ScanResult &scan);
Json to_json(const control::ControllabilityCertificate &cert);
Json report_json(const compiler::CompilationReport &report);

/// %.17g
std::string format_double(double x);

class CsvTable {
public:
    using Cell = std::variant<double, long long, std::string>;

    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<Cell> row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;
    void write(const std::string &path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

Json read_json(const std::string &path);
void write_json(const std::string &path, const Json &j);
void write_text(const std::string &path, const std::string &text);

/// Config, version, seeds and outputs of one run; the timestamp lives here only.
Json make_manifest(const std::string &command, const Json &config,
                   const std::map<std::string, std::uint64_t> &seeds,
                   const std::vector<std::string> &outputs);

} // namespace rydqca::io
