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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rydqca/bfgs.hpp"
#include "rydqca/pxp_engine.hpp"
#include "rydqca/types.hpp"

namespace rydqca::control {

struct CzPulseParams {
    double phi = 0.0;
    int size = 1;
    double omega = 1.0;
    double delta = 0.0;
    double t_f = 0.0;
};

/// Closed-loop detuned pulse imprinting phi on |G_S>. phi in (0, 2pi),
/// values within 1e-6 of an endpoint are clamped.
CzPulseParams cz_pulse_params(double phi, int size, double omega);

/// Ancilla-species segment realizing the loop: xi(t) = +delta * t.
pxp::PulseSegment cz_pulse_segment(const CzPulseParams &params);

/// phi reduced to [0, 2pi).
double wrap_phase(double phi);

struct GrapeProblem {
    std::vector<int> sizes;
    std::vector<double> target_phases;
    double omega = 1.0;
    double T = 1.0;
    int M = 100;
    double threshold = 1e-10;

    void validate() const;
    double dt() const { return T / M; }
};

struct GrapeResult {
    RVector xi;
    double error = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
    std::string status;
};

/// Final |psi_S(T)> of the two-level superatom from |G>.
std::pair<Complex, Complex> superatom_final_state(int size, double omega, double dt,
                                                  const RVector &xi);

double grape_error(const GrapeProblem &problem, const RVector &xi);
RVector grape_gradient(const GrapeProblem &problem, const RVector &xi);
double grape_error_gradient(const GrapeProblem &problem, const RVector &xi, RVector &grad);

struct GrapeOptions {
    opt::BfgsOptions bfgs;
    std::uint64_t seed = 20240601;
};

/// xi0 defaults to uniform random phases in [0, 2pi) drawn from the seed.
GrapeResult grape_optimize(const GrapeProblem &problem, std::optional<RVector> xi0 = std::nullopt,
                           const GrapeOptions &options = {});

RVector random_phases(int m, std::uint64_t seed);

/// Ancilla-species piecewise-constant segment replaying xi.
pxp::PulseSegment grape_segment(const GrapeProblem &problem, const RVector &xi);

struct ScanPoint {
    double T = 0.0;
    double error = 0.0;
    bool feasible = false;
    RVector xi;
};

struct ScanOptions {
    int restarts = 4;
    /// Bisection stops at this width times 1/omega.
    double resolution = 1e-3;
    bool bisect = true;
    GrapeOptions grape;
};

struct ScanResult {
    bool feasible = false;
    double t_min = 0.0;
    double error_at_t_min = 0.0;
    RVector xi_at_t_min;
    double best_error = 0.0;
    std::vector<ScanPoint> curve; // in evaluation order
};

/// Warm-started descending scan; T_min is the smallest T whose optimized
/// error is below 1.01 * threshold, refined by bisection below the first
/// infeasible grid point.
ScanResult time_optimal_scan(const GrapeProblem &problem_template, const std::vector<double> &t_grid,
                             const ScanOptions &options = {},
                             std::optional<RVector> xi0 = std::nullopt);

struct PhaseScanPoint {
    double phi = 0.0;
    double t_min = 0.0;
    double error = 0.0;
    bool feasible = false;
    double t_min_forward = 0.0;
    double t_min_backward = 0.0;
};

/// T_min as a function of the phase on sizes[target_index]; other sizes
/// keep their template phases. Every phi is reached from both scan
/// directions and the smaller T_min is kept.
std::vector<PhaseScanPoint> phase_scan(const GrapeProblem &problem_template,
                                       std::size_t target_index, const std::vector<double> &phis,
                                       const std::vector<double> &t_grid,
                                       const ScanOptions &options = {}, std::size_t threads = 1);

/// xi -> pi - xi maps every target phase to its negative with identical error.
RVector mirror_phases(const RVector &xi);

struct MirrorScan {
    ScanResult plus;  // targets as given
    ScanResult minus; // negated targets
    double t_min_plus_raw = 0.0;
    double t_min_minus_raw = 0.0;
    /// Error of the mirrored winning pulse on the other sign, at the shared T_min.
    double mirror_error = 0.0;
};

/// Independent scans for phi and -phi; the shorter feasible pulse, mirrored,
/// seeds the other sign so both report the smaller T_min when it verifies.
MirrorScan mirror_scan(const GrapeProblem &problem_template, const std::vector<double> &t_grid,
                       const ScanOptions &options = {});

struct ControllabilityCertificate {
    std::vector<int> sizes;
    double vandermonde_det = 0.0;      // closed form
    double vandermonde_det_lu = 0.0;   // LU of the assembled matrix
    int lie_dimension = 0;
    int target_dimension = 0;
    bool controllable = false;
};

ControllabilityCertificate controllability_check(const std::vector<int> &sizes, double omega);

} // namespace rydqca::control

namespace rydqca::control {

/// Detuned constant-phase pulses realizing u (up to global phase) on every
/// non-frozen atom of the species. One pulse for a generic rotation, two
/// resonant pi pulses for a pure sigma^Z rotation, none for the identity.
std::vector<pxp::PulseSegment> single_qubit_pulses(const CMatrix2 &u, double rabi,
                                                   pxp::Species species,
                                                   const std::vector<std::size_t> &frozen = {});

} // namespace rydqca::control
