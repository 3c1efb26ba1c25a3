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
#include "rydqca/control.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <Eigen/LU>

#include "rydqca/errors.hpp"
#include "rydqca/parallel.hpp"

namespace rydqca::control {
namespace {

constexpr double kPhaseClamp = 1e-6;
// 2-point Gauss-Legendre nodes on [0, 1].
constexpr double kGauss[2] = {0.5 - 0.28867513459481288225, 0.5 + 0.28867513459481288225};

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Row-major 2x2 complex matrix.
using M2 = std::array<Complex, 4>;

/// exp(-i H(xi) tau) with H = a (e^{-i xi}|G><R| + e^{i xi}|R><G|).
M2 step(double a, double xi, double tau) {
    const double c = std::cos(a * tau);
    const double s = std::sin(a * tau);
    const Complex e = std::exp(Complex(0.0, xi));
    return {Complex(c, 0.0), Complex(0.0, -s) * std::conj(e), Complex(0.0, -s) * e, Complex(c, 0.0)};
}

M2 mul(const M2 &x, const M2 &y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

/// dU/dxi for one piecewise-constant step by Gauss quadrature of
/// -i int_0^tau U(tau - s) dH U(s) ds.
M2 step_derivative(double a, double xi, double tau) {
    const Complex e = std::exp(Complex(0.0, xi));
    const M2 dh{0.0, Complex(0.0, -a) * std::conj(e), Complex(0.0, a) * e, 0.0};
    M2 acc{0.0, 0.0, 0.0, 0.0};
    for (double node : kGauss) {
        const M2 term = mul(step(a, xi, tau * (1.0 - node)), mul(dh, step(a, xi, tau * node)));
        for (int k = 0; k < 4; ++k) {
            acc[k] += term[k];
        }
    }
    const Complex f = Complex(0.0, -0.5 * tau);
    for (auto &v : acc) {
        v *= f;
    }
    return acc;
}

void check_xi(const GrapeProblem &problem, const RVector &xi) {
    if (xi.size() != static_cast<std::size_t>(problem.M)) {
        throw DomainError("control vector has " + std::to_string(xi.size()) + " entries, expected " +
                          std::to_string(problem.M));
    }
}

} // namespace

double wrap_phase(double phi) {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) {
        w += 2.0 * kPi;
    }
    if (w >= 2.0 * kPi) {
        w = 0.0;
    }
    return w;
}

CzPulseParams cz_pulse_params(double phi, int size, double omega) {
    if (!(phi > 0.0 && phi < 2.0 * kPi)) {
        throw DomainError("mediated-gate phase must lie in (0, 2pi), got " + std::to_string(phi));
    }
    if (size < 1) {
        throw DomainError("superatom size must be >= 1");
    }
    if (!(omega > 0.0)) {
        throw DomainError("Rabi frequency must be positive");
    }
    phi = std::clamp(phi, kPhaseClamp, 2.0 * kPi - kPhaseClamp);
    CzPulseParams p;
    p.phi = phi;
    p.size = size;
    p.omega = omega;
    const double rs = std::sqrt(static_cast<double>(size)) * omega;
    const double u = kPi - phi;
    p.t_f = (2.0 / rs) * std::sqrt(kPi * kPi - u * u);
    p.delta = 2.0 * u / p.t_f;
    return p;
}

pxp::PulseSegment cz_pulse_segment(const CzPulseParams &params) {
    pxp::PulseSegment seg;
    seg.species = pxp::Species::Ancilla;
    seg.rabi = params.omega;
    seg.phase = pxp::LinearPhase{0.0, params.delta};
    seg.duration = params.t_f;
    return seg;
}

void GrapeProblem::validate() const {
    if (sizes.empty()) {
        throw ConfigError("GRAPE problem needs at least one superatom size");
    }
    if (sizes.size() != target_phases.size()) {
        throw ConfigError("GRAPE problem: one target phase per size required");
    }
    auto sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("GRAPE problem: superatom sizes must be distinct");
    }
    if (sorted.front() < 1) {
        throw ConfigError("GRAPE problem: sizes must be >= 1");
    }
    if (M < 2) {
        throw ConfigError("GRAPE problem: M must be >= 2");
    }
    if (!(T > 0.0) || !(omega > 0.0) || !std::isfinite(T)) {
        throw ConfigError("GRAPE problem: T and omega must be positive");
    }
    if (!(threshold > 0.0)) {
        throw ConfigError("GRAPE problem: threshold must be positive");
    }
}

std::pair<Complex, Complex> superatom_final_state(int size, double omega, double dt,
                                                  const RVector &xi) {
    const double a = 0.5 * std::sqrt(static_cast<double>(size)) * omega;
    Complex g = 1.0, r = 0.0;
    for (double x : xi) {
        const M2 u = step(a, x, dt);
        const Complex ng = u[0] * g + u[1] * r;
        const Complex nr = u[2] * g + u[3] * r;
        g = ng;
        r = nr;
    }
    return {g, r};
}

double grape_error(const GrapeProblem &problem, const RVector &xi) {
    problem.validate();
    check_xi(problem, xi);
    double err = 0.0;
    for (std::size_t s = 0; s < problem.sizes.size(); ++s) {
        const auto [g, r] = superatom_final_state(problem.sizes[s], problem.omega, problem.dt(), xi);
        const Complex o = std::exp(Complex(0.0, -wrap_phase(problem.target_phases[s]))) * g;
        err += std::norm(1.0 - o);
    }
    return err;
}

double grape_error_gradient(const GrapeProblem &problem, const RVector &xi, RVector &grad) {
    problem.validate();
    check_xi(problem, xi);
    const std::size_t m = xi.size();
    const double dt = problem.dt();
    grad.assign(m, 0.0);
    std::vector<std::array<Complex, 2>> fwd(m + 1);
    std::vector<M2> u(m);
    double err = 0.0;
    for (std::size_t s = 0; s < problem.sizes.size(); ++s) {
        const double a = 0.5 * std::sqrt(static_cast<double>(problem.sizes[s])) * problem.omega;
        fwd[0] = {1.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) {
            u[i] = step(a, xi[i], dt);
            const auto &p = fwd[i];
            fwd[i + 1] = {u[i][0] * p[0] + u[i][1] * p[1], u[i][2] * p[0] + u[i][3] * p[1]};
        }
        const Complex target = std::exp(Complex(0.0, wrap_phase(problem.target_phases[s])));
        const Complex o = std::conj(target) * fwd[m][0];
        const Complex w = std::conj(1.0 - o);
        err += std::norm(1.0 - o);
        // chi_i = U_{i+1}^dag ... U_M^dag |target>, swept backwards.
        std::array<Complex, 2> chi{target, 0.0};
        for (std::size_t i = m; i-- > 0;) {
            const M2 du = step_derivative(a, xi[i], dt);
            const auto &p = fwd[i];
            const Complex v0 = du[0] * p[0] + du[1] * p[1];
            const Complex v1 = du[2] * p[0] + du[3] * p[1];
            const Complex d_o = std::conj(chi[0]) * v0 + std::conj(chi[1]) * v1;
            grad[i] += -2.0 * (w * d_o).real();
            const M2 &ui = u[i];
            chi = {std::conj(ui[0]) * chi[0] + std::conj(ui[2]) * chi[1],
                   std::conj(ui[1]) * chi[0] + std::conj(ui[3]) * chi[1]};
        }
    }
    return err;
}

RVector grape_gradient(const GrapeProblem &problem, const RVector &xi) {
    RVector g;
    grape_error_gradient(problem, xi, g);
    return g;
}

RVector random_phases(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RVector xi(static_cast<std::size_t>(std::max(m, 0)));
    for (auto &x : xi) {
        x = 2.0 * kPi * uniform01(rng);
    }
    return xi;
}

GrapeResult grape_optimize(const GrapeProblem &problem, std::optional<RVector> xi0,
                           const GrapeOptions &options) {
    problem.validate();
    RVector start = xi0 ? *xi0 : random_phases(problem.M, options.seed);
    check_xi(problem, start);
    auto objective = [&problem](const RVector &x, RVector &g) {
        return grape_error_gradient(problem, x, g);
    };
    const auto r = opt::bfgs_minimize(objective, std::move(start), options.bfgs);
    GrapeResult out;
    out.xi = r.x;
    out.error = r.f;
    out.converged = r.converged;
    out.iterations = r.iterations;
    out.evaluations = r.evaluations;
    out.status = opt::to_string(r.status);
    return out;
}

pxp::PulseSegment grape_segment(const GrapeProblem &problem, const RVector &xi) {
    check_xi(problem, xi);
    pxp::PulseSegment seg;
    seg.species = pxp::Species::Ancilla;
    seg.rabi = problem.omega;
    seg.phase = pxp::PiecewisePhase{xi, problem.dt()};
    seg.duration = problem.T;
    return seg;
}

ScanResult time_optimal_scan(const GrapeProblem &problem_template, const std::vector<double> &t_grid,
                             const ScanOptions &options, std::optional<RVector> xi0) {
    problem_template.validate();
    if (t_grid.empty()) {
        throw ConfigError("time-optimal scan needs a non-empty T grid");
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] < t_grid[i - 1]))) {
            throw ConfigError("T grid must be positive and strictly descending");
        }
    }
    const double accept = 1.01 * problem_template.threshold;
    std::uint64_t stream = 0;

    auto solve = [&](double t, const RVector &warm) {
        GrapeProblem p = problem_template;
        p.T = t;
        ScanPoint pt;
        pt.T = t;
        auto r = grape_optimize(p, warm, options.grape);
        for (int k = 0; k < options.restarts && !(r.error < accept); ++k) {
            auto cand = grape_optimize(p, random_phases(p.M, options.grape.seed + 7919 * ++stream),
                                       options.grape);
            if (cand.error < r.error) {
                r = std::move(cand);
            }
        }
        pt.error = r.error;
        pt.feasible = r.error < accept;
        pt.xi = std::move(r.xi);
        return pt;
    };

    ScanResult res;
    res.best_error = std::numeric_limits<double>::infinity();
    RVector warm = xi0 ? *xi0 : random_phases(problem_template.M, options.grape.seed);
    std::optional<ScanPoint> last_ok;
    std::optional<double> first_bad;
    for (double t : t_grid) {
        ScanPoint pt = solve(t, warm);
        res.best_error = std::min(res.best_error, pt.error);
        res.curve.push_back(pt);
        if (!pt.feasible) {
            first_bad = t;
            break;
        }
        warm = pt.xi;
        last_ok = std::move(pt);
    }
    if (!last_ok) {
        res.feasible = false;
        return res;
    }
    if (options.bisect && first_bad) {
        double hi = last_ok->T;
        double lo = *first_bad;
        const double width = options.resolution / problem_template.omega;
        while (hi - lo > width) {
            const double mid = 0.5 * (lo + hi);
            ScanPoint pt = solve(mid, last_ok->xi);
            res.best_error = std::min(res.best_error, pt.error);
            res.curve.push_back(pt);
            if (pt.feasible) {
                hi = mid;
                last_ok = std::move(pt);
            } else {
                lo = mid;
            }
        }
    }
    res.feasible = true;
    res.t_min = last_ok->T;
    res.error_at_t_min = last_ok->error;
    res.xi_at_t_min = last_ok->xi;
    return res;
}

RVector mirror_phases(const RVector &xi) {
    RVector out(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        out[i] = kPi - xi[i];
    }
    return out;
}

MirrorScan mirror_scan(const GrapeProblem &problem_template, const std::vector<double> &t_grid,
                       const ScanOptions &options) {
    GrapeProblem neg = problem_template;
    for (auto &phi : neg.target_phases) {
        phi = -phi;
    }
    MirrorScan m;
    m.plus = time_optimal_scan(problem_template, t_grid, options);
    m.minus = time_optimal_scan(neg, t_grid, options);
    m.t_min_plus_raw = m.plus.t_min;
    m.t_min_minus_raw = m.minus.t_min;
    if (!m.plus.feasible && !m.minus.feasible) {
        return m;
    }
    const bool plus_wins = m.plus.feasible && (!m.minus.feasible || m.plus.t_min <= m.minus.t_min);
    ScanResult &win = plus_wins ? m.plus : m.minus;
    ScanResult &lose = plus_wins ? m.minus : m.plus;
    GrapeProblem other = plus_wins ? neg : problem_template;
    other.T = win.t_min;
    const RVector xi = mirror_phases(win.xi_at_t_min);
    m.mirror_error = grape_error(other, xi);
    if (m.mirror_error < 1.01 * other.threshold && (!lose.feasible || win.t_min < lose.t_min)) {
        lose.feasible = true;
        lose.t_min = win.t_min;
        lose.error_at_t_min = m.mirror_error;
        lose.xi_at_t_min = xi;
        lose.best_error = std::min(lose.best_error, m.mirror_error);
    }
    return m;
}

std::vector<PhaseScanPoint> phase_scan(const GrapeProblem &problem_template,
                                       std::size_t target_index, const std::vector<double> &phis,
                                       const std::vector<double> &t_grid,
                                       const ScanOptions &options, std::size_t threads) {
    problem_template.validate();
    if (target_index >= problem_template.sizes.size()) {
        throw ConfigError("phase scan target index out of range");
    }
    if (phis.empty()) {
        throw ConfigError("phase scan needs a non-empty phase grid");
    }
    const std::size_t n = phis.size();
    std::vector<ScanResult> fwd(n), bwd(n);
    auto pass = [&](bool forward) {
        auto &out = forward ? fwd : bwd;
        std::optional<RVector> warm;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = forward ? k : n - 1 - k;
            GrapeProblem p = problem_template;
            p.target_phases[target_index] = phis[i];
            out[i] = time_optimal_scan(p, t_grid, options, warm);
            if (!out[i].curve.empty() && out[i].curve.front().feasible) {
                warm = out[i].curve.front().xi;
            }
        }
    };
    parallel_for(2, [&](std::size_t d) { pass(d == 0); }, threads);

    std::vector<PhaseScanPoint> res(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto &pt = res[i];
        pt.phi = phis[i];
        pt.t_min_forward = fwd[i].feasible ? fwd[i].t_min : std::numeric_limits<double>::infinity();
        pt.t_min_backward = bwd[i].feasible ? bwd[i].t_min : std::numeric_limits<double>::infinity();
        const ScanResult &best = pt.t_min_forward <= pt.t_min_backward ? fwd[i] : bwd[i];
        pt.feasible = best.feasible;
        pt.t_min = best.feasible ? best.t_min : std::numeric_limits<double>::infinity();
        pt.error = best.feasible ? best.error_at_t_min : best.best_error;
    }
    return res;
}

ControllabilityCertificate controllability_check(const std::vector<int> &sizes, double omega) {
    if (sizes.empty()) {
        throw ConfigError("controllability check needs at least one size");
    }
    for (int s : sizes) {
        if (s < 1) {
            throw ConfigError("superatom sizes must be >= 1");
        }
    }
    if (!(omega > 0.0)) {
        throw DomainError("Rabi frequency must be positive");
    }
    ControllabilityCertificate cert;
    cert.sizes = sizes;
    const std::size_t k = sizes.size();
    std::vector<double> a(k);
    for (std::size_t i = 0; i < k; ++i) {
        a[i] = 0.5 * std::sqrt(static_cast<double>(sizes[i])) * omega;
    }

    Eigen::MatrixXd vm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            vm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::pow(a[i], static_cast<double>(2 * j + 1));
        }
    }
    cert.vandermonde_det_lu = vm.fullPivLu().determinant();
    double det = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        det *= a[i];
        for (std::size_t j = i + 1; j < k; ++j) {
            det *= a[j] * a[j] - a[i] * a[i];
        }
    }
    cert.vandermonde_det = det;

    // Generators -iH(0), -iH(pi/2) as block-diagonal anti-Hermitian matrices,
    // flattened to real vectors for Gram-Schmidt.
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * k);
    auto generator = [&](double xi) {
        CMatrix w = CMatrix::Zero(dim, dim);
        const Complex e = std::exp(Complex(0.0, xi));
        for (std::size_t i = 0; i < k; ++i) {
            const Eigen::Index o = static_cast<Eigen::Index>(2 * i);
            w(o, o + 1) = -kI * a[i] * std::conj(e);
            w(o + 1, o) = -kI * a[i] * e;
        }
        return w;
    };
    auto flatten = [dim](const CMatrix &m) {
        Eigen::VectorXd v(2 * dim * dim);
        for (Eigen::Index i = 0; i < dim * dim; ++i) {
            v[2 * i] = m.data()[i].real();
            v[2 * i + 1] = m.data()[i].imag();
        }
        return v;
    };
    std::vector<CMatrix> elems;
    std::vector<Eigen::VectorXd> ortho;
    auto try_add = [&](const CMatrix &m) {
        Eigen::VectorXd v = flatten(m);
        const double nv = v.norm();
        if (nv < 1e-300) {
            return false;
        }
        v /= nv;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : ortho) {
                v -= q.dot(v) * q;
            }
        }
        const double r = v.norm();
        if (r <= 1e-9) {
            return false;
        }
        ortho.push_back(v / r);
        elems.push_back(m / nv);
        return true;
    };
    try_add(generator(0.0));
    try_add(generator(kPi / 2.0));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const CMatrix c = elems[i] * elems[j] - elems[j] * elems[i];
            try_add(c);
        }
    }
    cert.lie_dimension = static_cast<int>(elems.size());
    cert.target_dimension = static_cast<int>(3 * k);
    cert.controllable = cert.lie_dimension == cert.target_dimension;
    return cert;
}

} // namespace rydqca::control

namespace rydqca::control {

std::vector<pxp::PulseSegment> single_qubit_pulses(const CMatrix2 &u, double rabi,
                                                   pxp::Species species,
                                                   const std::vector<std::size_t> &frozen) {
    if (!(rabi > 0.0)) {
        throw DomainError("Rabi frequency must be positive");
    }
    const Complex det = u.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-9) {
        throw DomainError("single-qubit operator is not unitary");
    }
    const CMatrix2 v = u / std::sqrt(det);
    // v = c I - i s (n . sigma)
    const double c = 0.5 * v.trace().real();
    double sn[3];
    for (int a = 0; a < 3; ++a) {
        sn[a] = (0.5 * kI * (pauli_matrix::by_index(a + 1) * v).trace()).real();
    }
    const double s = std::sqrt(sn[0] * sn[0] + sn[1] * sn[1] + sn[2] * sn[2]);
    std::vector<pxp::PulseSegment> out;
    if (s < 1e-14) {
        return out;
    }
    const double theta = std::atan2(s, c);
    const double nx = sn[0] / s, ny = sn[1] / s, nz = sn[2] / s;
    const double perp = std::hypot(nx, ny);

    pxp::PulseSegment seg;
    seg.species = species;
    seg.rabi = rabi;
    seg.frozen = frozen;
    if (perp > 1e-9) {
        seg.duration = 2.0 * theta * perp / rabi;
        seg.phase = pxp::LinearPhase{std::atan2(-ny, nx), 0.0};
        seg.detuning = 2.0 * theta * nz / seg.duration;
        out.push_back(seg);
        return out;
    }
    // exp(-i theta' Z) from two resonant pi pulses with phases 0 and -theta'.
    const double tz = theta * (nz > 0 ? 1.0 : -1.0);
    seg.duration = kPi / rabi;
    seg.phase = pxp::LinearPhase{0.0, 0.0};
    out.push_back(seg);
    seg.phase = pxp::LinearPhase{-tz, 0.0};
    out.push_back(seg);
    return out;
}

} // namespace rydqca::control
