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
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "rydqca/control.hpp"
#include "rydqca/errors.hpp"
#include "rydqca/lattice.hpp"
#include "rydqca/pauli.hpp"
#include "rydqca/pxp_engine.hpp"
#include "rydqca/types.hpp"

namespace rydqca::compiler {

/// U = exp(-i tau b sum X) exp(-i tau (J sum ZZ + h sum Z))
struct KickedIsing {
    double J = 0.0;
    double h = 0.0;
    double b = 0.0;
};

/// Square lattice, J_x on x bonds and J_y on y bonds.
struct InhomKickedIsing {
    double J_x = 0.0;
    double J_y = 0.0;
    double h = 0.0;
    double b = 0.0;
};

/// U = exp(-i tau H_XX) exp(-i tau H_YY) exp(-i tau H_ZZ), index 0/1/2 = X/Y/Z.
struct KitaevFloquet {
    std::array<double, 3> J{};
    std::array<double, 3> h{};
};

/// U = exp(-i tau H_Z) exp(-i tau H_Y) exp(-i tau H_X) with
/// H_a = c_a sum s^a s^a + h_a sum s^a on every bond.
struct TwoLocal {
    std::array<double, 3> c{};
    std::array<double, 3> h{};
};

using ModelParams = std::variant<KickedIsing, InhomKickedIsing, KitaevFloquet, TwoLocal>;

struct QcaModel {
    ModelParams params = KickedIsing{};
    double tau = 1.0;
    lattice::LatticeSpec lattice;

    void validate() const;
    std::string variant_name() const;
};

/// One commuting layer: sum_bonds J s^a s^a + sum_sites h s^a in basis a.
struct Layer {
    int basis = 2; // 0 X, 1 Y, 2 Z
    std::vector<std::tuple<std::size_t, std::size_t, double>> couplings;
    RVector fields;
};

/// Layers in time order (first applied first).
std::vector<Layer> model_layers(const QcaModel &model);
pauli::PauliSum layer_hamiltonian(const Layer &layer, std::size_t n);

/// R with R^dag s^Z R = s^a.
CMatrix2 basis_rotation(int basis);

/// diag(e^{i phi}, 1, 1, 1) on (gg, gr, rg, rr).
Eigen::Matrix4cd cz_matrix(double phi);

/// Fast exact application of one QCA step to a data state vector.
class StepOperator {
public:
    explicit StepOperator(const QcaModel &model);

    std::size_t n_qubits() const { return n_; }
    void apply(CVector &psi) const;

private:
    struct OneQubitLayer {
        std::vector<std::pair<std::size_t, CMatrix2>> gates;
    };
    struct DiagonalLayer {
        CVector phases;
    };
    std::size_t n_ = 0;
    std::vector<std::variant<OneQubitLayer, DiagonalLayer>> ops_;
};

/// Dense one-step unitary as a product of Pauli-rotation exponentials.
/// Resource error above 12 data qubits.
CMatrix ideal_step_unitary(const QcaModel &model);
inline constexpr std::size_t kDenseQubitCap = 12;

struct SingleQubitGate {
    CMatrix2 u;
    std::size_t qubit = 0;
};

struct CzGate {
    double phi = 0.0;
    std::size_t a = 0;
    std::size_t b = 0;
};

using Gate = std::variant<SingleQubitGate, CzGate>;

struct GateCircuit {
    std::size_t n_qubits = 0;
    std::vector<std::vector<Gate>> layers;

    /// Layers are either disjoint single-qubit gates or commuting CZs on
    /// distinct lattice bonds.
    void validate(const lattice::DataGraph &graph) const;
};

void apply_circuit(const GateCircuit &circuit, CVector &psi);
CMatrix circuit_unitary(const GateCircuit &circuit);

struct DataStage {
    std::vector<CMatrix2> unitaries; // one per data site
};

/// Target loop phase per superatom size present in the array.
struct GadgetStage {
    std::map<int, double> phases;
};

using Stage = std::variant<DataStage, GadgetStage>;

/// Gadget assignment used by a variant.
lattice::GadgetAssignment default_assignment(const QcaModel &model);

/// Stages of one step in time order, before cross-step merging.
std::vector<Stage> step_stages(const QcaModel &model, const lattice::AtomArray &array);

/// Merges adjacent data stages and drops identity stages.
std::vector<Stage> merge_stages(const std::vector<Stage> &stages, std::size_t n_data);

struct CompileOptions {
    bool physical = false;
    double omega = 1.0;
    /// Fixed GRAPE duration; otherwise the shortest feasible point of grape_t_grid.
    std::optional<double> grape_T;
    /// Descending, in units of 1/omega. Default: 40 down to 1 in steps of 0.5.
    std::vector<double> grape_t_grid;
    control::ScanOptions scan = [] {
        control::ScanOptions s;
        s.bisect = false;
        return s;
    }();
    int grape_M = 100;
    double grape_threshold = 1e-10;
};

struct GadgetPulse {
    std::map<int, double> phases;
    std::string method; // "closed-form", "grape", "identity"
    std::vector<pxp::PulseSegment> segments;
    double error = 0.0;
    double duration = 0.0;
    std::optional<control::ScanResult> scan;
};

struct CompilationReport {
    QcaModel model;
    lattice::AtomArray array;
    lattice::GadgetAssignment assignment;
    GateCircuit circuit;
    std::vector<Stage> raw_stages; // one step, as planned
    std::vector<Stage> stages;     // one step, merged
    std::vector<GadgetPulse> gadget_pulses;
    pxp::PulseProgram program;  // one step
    std::size_t segments_per_step = 0;
    std::size_t ancilla_pulses_per_step = 0;
    std::vector<int> sizes_used;
    bool physical = false;
    double omega = 1.0;
    std::optional<double> fidelity;
};

/// Throws CompileError (a NumericError) when a mixed-size gadget pulse is
/// infeasible at the requested precision.
CompilationReport compile(const QcaModel &model, const CompileOptions &options = {});

class CompileError : public NumericError {
public:
    CompileError(const std::string &what, control::ScanResult scan)
        : NumericError(what), scan_(std::move(scan)) {}
    const control::ScanResult &scan() const { return scan_; }

private:
    control::ScanResult scan_;
};

/// Program for `repetitions` steps with data stages merged across steps.
pxp::PulseProgram program_for(const CompilationReport &report, int repetitions);

struct VerifyOptions {
    std::size_t random_states = 20;
    std::uint64_t seed = 0x5eed;
    double leakage_tol = 1e-6;
    std::size_t threads = 0;
    pxp::EngineOptions engine;
};

struct VerifyReport {
    double fidelity = 1.0;   // worst case
    double leakage = 0.0;    // worst case, any segment
    bool leakage_failure = false;
    std::size_t states = 0;
    int repetitions = 0;
    std::size_t basis_dimension = 0;
};

VerifyReport verify(const CompilationReport &report, int repetitions,
                    const VerifyOptions &options = {});

struct EffectiveHamiltonian {
    CMatrix h_sum;
    /// -(i tau / 2) sum_{j > k} [H_j, H_k], j later in time.
    CMatrix correction;
    std::vector<CMatrix> layers;
    std::vector<std::tuple<std::size_t, std::size_t, CMatrix>> pairwise;
};

/// Resource error above 10 data qubits.
EffectiveHamiltonian floquet_effective_h(const QcaModel &model);

/// Qubits reachable from `site` through the layer bonds after `steps`
/// Heisenberg steps (last layer of a step first).
std::vector<std::size_t> light_cone(const QcaModel &model, std::size_t site, int steps);

} // namespace rydqca::compiler
