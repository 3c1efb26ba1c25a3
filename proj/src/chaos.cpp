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
#include "rydqca/chaos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "rydqca/control.hpp"
#include "rydqca/errors.hpp"
#include "rydqca/kernels/kernels.hpp"
#include "rydqca/linalg.hpp"
#include "rydqca/parallel.hpp"

namespace rydqca::chaos {
namespace {

const double kTheta = std::acos(1.0 / std::sqrt(3.0));

void check_color(int k) {
    if (k < 1 || k > 4) {
        throw DomainError("tetrahedral index must be 1..4, got " + std::to_string(k));
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

// Sample variance with an externally supplied sum of squares.
double sample_variance(double sum, double sum_sq, std::size_t n) {
    const double nn = static_cast<double>(n);
    return (sum_sq - sum * sum / nn) / (nn - 1.0);
}

void walsh_hadamard(std::vector<Complex> &v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const Complex a = v[j];
                const Complex b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

CMatrix tensor(const std::vector<int> &letters) {
    CMatrix m = CMatrix::Identity(1, 1);
    for (int a : letters) {
        m = linalg::kron(CMatrix(pauli_matrix::by_index(a)), m);
    }
    return m;
}

std::size_t data_qubits(const compiler::QcaModel &model) {
    model.validate();
    return lattice::build_graph(model.lattice).size();
}

std::vector<CMatrix> heisenberg_series(const compiler::QcaModel &model, const Observable &o,
                                       int t_max) {
    const std::size_t n = data_qubits(model);
    if (n > kExactQubitCap) {
        throw ResourceError("exact operator evolution limited to " +
                            std::to_string(kExactQubitCap) + " qubits, got " + std::to_string(n));
    }
    if (t_max < 0) {
        throw ConfigError("time must be non-negative");
    }
    o.validate(n);
    const CMatrix u = compiler::ideal_step_unitary(model);
    const CMatrix ud = u.adjoint();
    std::vector<CMatrix> out;
    out.push_back(pauli::to_matrix(o.to_pauli(n)));
    for (int t = 1; t <= t_max; ++t) {
        out.push_back(ud * out.back() * u);
    }
    return out;
}

} // namespace

Vector2 tetra_state(int k) {
    check_color(k);
    const double c = std::cos(kTheta / 2.0);
    const double s = std::sin(kTheta / 2.0);
    const Complex e = std::polar(1.0, kPi / 4.0);
    switch (k) {
    case 1:
        return {c, e * s};
    case 2:
        return {c, -e * s};
    case 3:
        return {s, std::conj(e) * c};
    default:
        return {s, -std::conj(e) * c};
    }
}

std::array<double, 3> tetra_bloch(int k) {
    const Vector2 v = tetra_state(k);
    std::array<double, 3> r{};
    for (int a = 0; a < 3; ++a) {
        r[a] = (v.adjoint() * pauli_matrix::by_index(a + 1) * v)(0, 0).real();
    }
    return r;
}

CMatrix2 tetra_unitary(int k) {
    const Vector2 v = tetra_state(k);
    CMatrix2 u;
    u << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
    return u;
}

Coloring random_coloring(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Coloring c;
    c.seed = seed;
    c.colors.resize(n);
    for (auto &k : c.colors) {
        k = static_cast<int>(rng() >> 62) + 1;
    }
    return c;
}

CVector product_state(const Coloring &coloring) {
    CVector psi{Complex(1.0)};
    for (std::size_t i = 0; i < coloring.colors.size(); ++i) {
        const Vector2 mu = tetra_state(coloring.colors[i]);
        CVector next(psi.size() * 2);
        for (std::size_t j = 0; j < psi.size(); ++j) {
            next[j] = psi[j] * mu(0);
            next[j + psi.size()] = psi[j] * mu(1);
        }
        psi = std::move(next);
    }
    return psi;
}

InitialState sample_initial_state(std::size_t n, std::uint64_t seed) {
    InitialState s;
    s.coloring = random_coloring(n, seed);
    s.state = product_state(s.coloring);
    return s;
}

void Observable::validate(std::size_t n) const {
    if (letter != 'X' && letter != 'Y' && letter != 'Z') {
        throw ConfigError(std::string("observable letter must be X, Y or Z, got '") + letter + "'");
    }
    if (sites.empty()) {
        throw ConfigError("observable needs at least one site");
    }
    std::set<std::size_t> seen;
    for (std::size_t s : sites) {
        if (s >= n) {
            throw ConfigError("observable site " + std::to_string(s) + " out of range for " +
                              std::to_string(n) + " qubits");
        }
        if (!seen.insert(s).second) {
            throw ConfigError("observable site " + std::to_string(s) + " listed twice");
        }
    }
}

pauli::PauliString Observable::to_pauli(std::size_t n) const {
    validate(n);
    pauli::PauliString p(n);
    for (std::size_t s : sites) {
        p.set(s, letter);
    }
    return p;
}

std::string Observable::to_string() const {
    std::string s(1, letter);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        s += (i == 0 ? "@" : ",") + std::to_string(sites[i]);
    }
    return s;
}

double expectation(const Observable &o, const CVector &psi) {
    if (o.sites.size() == 1 && o.letter != 'Y') {
        return o.letter == 'X' ? kernels::expval_x(psi, o.sites[0]) : kernels::expval_z(psi, o.sites[0]);
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(psi.size()));
    return pauli::expectation(o.to_pauli(n), psi).real();
}

double squared_mean_estimate(double shot_mean, int m) {
    if (m < 2) {
        throw ConfigError("shot estimator needs at least 2 shots");
    }
    return (m * shot_mean * shot_mean - 1.0) / (m - 1.0);
}

GEstimate estimate_g(const compiler::QcaModel &model, const Observable &o,
                     const GOptions &options) {
    const std::size_t n = data_qubits(model);
    if (n > kSampleQubitCap) {
        throw ResourceError("sampling engine limited to " + std::to_string(kSampleQubitCap) +
                            " qubits, got " + std::to_string(n));
    }
    o.validate(n);
    if (options.samples < 10) {
        throw ConfigError("need at least 10 samples, got " + std::to_string(options.samples));
    }
    if (options.batches < 2 || options.samples % options.batches != 0) {
        throw ConfigError("sample count " + std::to_string(options.samples) +
                          " must be divisible by the batch count " +
                          std::to_string(options.batches));
    }
    if (options.t_max < 0) {
        throw ConfigError("t_max must be non-negative");
    }
    if (options.shots && *options.shots < 2) {
        throw ConfigError("shots must be at least 2");
    }
    const compiler::StepOperator step(model);
    const auto steps = static_cast<std::size_t>(options.t_max) + 1;
    const std::size_t ns = options.samples;
    std::vector<std::vector<double>> v(steps, std::vector<double>(ns));
    std::vector<std::vector<double>> v2(steps, std::vector<double>(ns));

    parallel_for(
        ns,
        [&](std::size_t s) {
            const std::uint64_t seed = sample_seed(options.seed, s);
            CVector psi = sample_initial_state(n, seed).state;
            std::mt19937_64 shot_rng(splitmix64(seed));
            for (std::size_t t = 0; t < steps; ++t) {
                if (t > 0) {
                    step.apply(psi);
                }
                const double e = std::clamp(expectation(o, psi), -1.0, 1.0);
                if (options.shots) {
                    const int m = *options.shots;
                    std::binomial_distribution<int> bin(m, 0.5 * (1.0 + e));
                    const double mean = (2.0 * bin(shot_rng) - m) / m;
                    v[t][s] = mean;
                    v2[t][s] = squared_mean_estimate(mean, m);
                } else {
                    v[t][s] = e;
                    v2[t][s] = e * e;
                }
            }
        },
        options.threads);

    GEstimate out;
    out.samples = ns;
    out.batches = options.batches;
    const std::size_t per = ns / options.batches;
    for (std::size_t t = 0; t < steps; ++t) {
        out.times.push_back(static_cast<int>(t));
        const double sum = std::accumulate(v[t].begin(), v[t].end(), 0.0);
        const double sq = std::accumulate(v2[t].begin(), v2[t].end(), 0.0);
        out.g.push_back(sample_variance(sum, sq, ns));
        out.mean.push_back(sum / static_cast<double>(ns));
        std::vector<double> bv;
        for (std::size_t b = 0; b < options.batches; ++b) {
            const auto lo = static_cast<std::ptrdiff_t>(b * per);
            const auto hi = static_cast<std::ptrdiff_t>((b + 1) * per);
            const double bs = std::accumulate(v[t].begin() + lo, v[t].begin() + hi, 0.0);
            const double bq = std::accumulate(v2[t].begin() + lo, v2[t].begin() + hi, 0.0);
            bv.push_back(sample_variance(bs, bq, per));
        }
        const double bm = std::accumulate(bv.begin(), bv.end(), 0.0) / static_cast<double>(bv.size());
        double acc = 0.0;
        for (double x : bv) {
            acc += (x - bm) * (x - bm);
        }
        out.uncertainty.push_back(std::sqrt(acc / static_cast<double>(bv.size() - 1)));
    }
    if (options.keep_values) {
        out.values = std::move(v);
    }
    return out;
}

double SizeDistribution::total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

double SizeDistribution::g() const {
    double g = 0.0;
    double w = 1.0;
    for (double x : p) {
        g += x * w;
        w /= 3.0;
    }
    return g;
}

SizeDistribution size_distribution(const CMatrix &op, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    if (static_cast<std::size_t>(op.rows()) != dim || static_cast<std::size_t>(op.cols()) != dim) {
        throw DomainError("operator dimension does not match qubit count");
    }
    const double norm = op.squaredNorm();
    if (!(norm > 0.0)) {
        throw DomainError("size distribution of the zero operator");
    }
    SizeDistribution d;
    d.p.assign(n + 1, 0.0);
    std::vector<Complex> v(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t j = 0; j < dim; ++j) {
            v[j] = op(static_cast<Eigen::Index>(j ^ a), static_cast<Eigen::Index>(j));
        }
        walsh_hadamard(v);
        for (std::size_t b = 0; b < dim; ++b) {
            // |c_P|^2 2^N / Tr[O^dag O] with c_P = Tr[P O] / 2^N
            d.p[static_cast<std::size_t>(std::popcount(a | b))] +=
                std::norm(v[b]) / (static_cast<double>(dim) * norm);
        }
    }
    return d;
}

std::vector<SizeDistribution> exact_size_distributions(const compiler::QcaModel &model,
                                                       const Observable &o, int t_max) {
    const std::size_t n = data_qubits(model);
    std::vector<SizeDistribution> out;
    for (const auto &op : heisenberg_series(model, o, t_max)) {
        out.push_back(size_distribution(op, n));
    }
    return out;
}

SizeDistribution exact_size_distribution(const compiler::QcaModel &model, const Observable &o,
                                         int t) {
    return exact_size_distributions(model, o, t).back();
}

double tetra_ensemble_g(const compiler::QcaModel &model, const Observable &o, int t) {
    const std::size_t n = data_qubits(model);
    if (n > 6) {
        throw ResourceError("tetrahedral enumeration limited to 6 qubits, got " + std::to_string(n));
    }
    const CMatrix op = heisenberg_series(model, o, t).back();
    const std::size_t count = std::size_t{1} << (2 * n);
    double acc = 0.0;
    Coloring c;
    c.colors.resize(n);
    for (std::size_t code = 0; code < count; ++code) {
        for (std::size_t i = 0; i < n; ++i) {
            c.colors[i] = static_cast<int>((code >> (2 * i)) & 3U) + 1;
        }
        const CVector psi = product_state(c);
        const Eigen::Map<const Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
        const double e = v.dot(op * v).real();
        acc += e * e;
    }
    return acc / static_cast<double>(count);
}

std::vector<double> random_operator_sizes(std::size_t n) {
    std::vector<double> p(n + 1, 0.0);
    const double norm = 1.0 - std::pow(4.0, -static_cast<double>(n));
    double binom = 1.0;
    for (std::size_t l = 0; l <= n; ++l) {
        if (l > 0) {
            binom = binom * static_cast<double>(n - l + 1) / static_cast<double>(l);
            p[l] = binom * std::pow(0.75, static_cast<double>(l)) *
                   std::pow(0.25, static_cast<double>(n - l)) / norm;
        }
    }
    return p;
}

CliffordTrace clifford_pauli_weights(const compiler::QcaModel &model, const Observable &o,
                                     int t_max) {
    if (t_max < 0) {
        throw ConfigError("t_max must be non-negative");
    }
    const auto layers = compiler::model_layers(model);
    const std::size_t n = lattice::build_graph(model.lattice).size();
    std::vector<std::vector<std::pair<pauli::PauliString, double>>> rot;
    for (const auto &l : layers) {
        const char letter = "XYZ"[l.basis];
        auto check = [&](double angle, const std::string &what) {
            if (!pauli::is_clifford_angle(angle)) {
                throw DomainError("non-Clifford " + what + ": tau * coupling = " +
                                  std::to_string(angle) + " is not a multiple of pi/4");
            }
        };
        auto &terms = rot.emplace_back();
        for (const auto &[a, b, j] : l.couplings) {
            check(model.tau * j, std::string(2, letter) + " coupling on bond (" +
                                     std::to_string(a) + "," + std::to_string(b) + ")");
        }
        for (std::size_t i = 0; i < l.fields.size(); ++i) {
            check(model.tau * l.fields[i], std::string(1, letter) + " field on site " + std::to_string(i));
        }
        for (const auto &[c, p] : compiler::layer_hamiltonian(l, n).terms) {
            terms.emplace_back(p, model.tau * c.real());
        }
    }
    CliffordTrace tr;
    pauli::PauliString op = o.to_pauli(n);
    for (int t = 0;; ++t) {
        tr.weights.push_back(op.weight());
        tr.g.push_back(std::pow(3.0, -static_cast<double>(op.weight())));
        tr.strings.push_back(op);
        if (t == t_max) {
            break;
        }
        for (auto it = rot.rbegin(); it != rot.rend(); ++it) {
            for (const auto &[p, theta] : *it) {
                pauli::conjugate_by_rotation(op, p, theta);
            }
        }
    }
    return tr;
}

CMatrix tetra_moment(int k) {
    if (k < 1 || k > 8) {
        throw DomainError("moment order must be 1..8");
    }
    const auto dim = Eigen::Index{1} << k;
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (int i = 1; i <= 4; ++i) {
        const Vector2 mu = tetra_state(i);
        const CMatrix rho = mu * mu.adjoint();
        CMatrix r = rho;
        for (int j = 1; j < k; ++j) {
            r = linalg::kron(rho, r);
        }
        acc += r;
    }
    return acc / 4.0;
}

CMatrix tetra_moment_closed_form(int k) {
    if (k < 1 || k > 4) {
        throw DomainError("closed-form moments exist for orders 1..4");
    }
    const auto dim = Eigen::Index{1} << k;
    const double scale = std::pow(0.5, k);
    CMatrix acc = CMatrix::Identity(dim, dim);
    // T^2_ab = delta_ab / 3 on every unordered pair of positions.
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            for (int a = 1; a <= 3; ++a) {
                std::vector<int> l(static_cast<std::size_t>(k), 0);
                l[i] = l[j] = a;
                acc += tensor(l) / 3.0;
            }
        }
    }
    // T^3_abc = |eps_abc| / sqrt(27) on every triple of positions.
    const std::array<std::array<int, 3>, 6> perms{{{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                                   {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            for (int m = j + 1; m < k; ++m) {
                for (const auto &p : perms) {
                    std::vector<int> l(static_cast<std::size_t>(k), 0);
                    l[i] = p[0];
                    l[j] = p[1];
                    l[m] = p[2];
                    acc += tensor(l) / std::sqrt(27.0);
                }
            }
        }
    }
    if (k == 4) {
        // T^4 = 1/9 on aaaa and on each distinct arrangement of an unordered pair {a, b}.
        for (int a = 1; a <= 3; ++a) {
            acc += tensor({a, a, a, a}) / 9.0;
            for (int b = a + 1; b <= 3; ++b) {
                for (const auto &l : std::vector<std::vector<int>>{{a, a, b, b}, {a, b, a, b}, {a, b, b, a},
                                                                   {b, a, a, b}, {b, a, b, a}, {b, b, a, a}}) {
                    acc += tensor(l) / 9.0;
                }
            }
        }
    }
    return scale * acc;
}

CMatrix haar_moment(int k) {
    if (k < 1 || k > 8) {
        throw DomainError("moment order must be 1..8");
    }
    const std::size_t dim = std::size_t{1} << k;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    double count = 0.0;
    do {
        for (std::size_t j = 0; j < dim; ++j) {
            std::size_t out = 0;
            for (int q = 0; q < k; ++q) {
                out |= ((j >> q) & 1U) << perm[static_cast<std::size_t>(q)];
            }
            p(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(j)) += 1.0;
        }
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p / (count * (k + 1));
}

PrepResult simulate_prep_protocol(const Coloring &coloring, const lattice::AtomArray &array,
                                  double rabi, const pxp::EngineOptions &options) {
    const std::size_t n = array.n_data;
    if (coloring.colors.size() != n) {
        throw ConfigError("coloring covers " + std::to_string(coloring.colors.size()) +
                          " sites but the array has " + std::to_string(n) + " data atoms");
    }
    for (int c : coloring.colors) {
        check_color(c);
    }
    const pxp::Engine engine(array, options);
    CVector ground(std::size_t{1} << n, Complex(0.0));
    ground[0] = 1.0;
    pxp::StateVector state = pxp::embed_data_state(engine.basis(), n, ground);

    PrepResult r;
    for (int k = 1; k <= 4; ++k) {
        const CMatrix2 v = k < 4 ? CMatrix2(tetra_unitary(k + 1).adjoint() * tetra_unitary(k))
                                 : tetra_unitary(4);
        std::vector<std::size_t> frozen;
        std::uint64_t frozen_mask = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (coloring.colors[i] > k) {
                frozen.push_back(i);
                frozen_mask |= std::uint64_t{1} << i;
            }
        }
        for (const auto &seg : control::single_qubit_pulses(v, rabi, pxp::Species::Data, frozen)) {
            engine.evolve_segment(state, seg);
            ++r.segments;
        }
        double excited = 0.0;
        const auto &basis = *engine.basis();
        for (std::size_t j = 0; j < basis.dimension(); ++j) {
            if (basis.state(j) & frozen_mask) {
                excited += std::norm(state.amplitudes[j]);
            }
        }
        r.frozen_excitation = std::max(r.frozen_excitation, excited);
        if (excited > 1e-12) {
            throw NumericError("frozen atoms left the ground state during preparation step " +
                               std::to_string(k) + " (population " + std::to_string(excited) + ")");
        }
    }
    r.state = pxp::project_data_state(state, n);
    r.expected = product_state(coloring);
    r.fidelity = std::norm(kernels::dot(r.expected, r.state));
    return r;
}

Histogram histogram(const std::vector<double> &values, std::size_t bins, double lo, double hi) {
    if (bins == 0 || !(hi > lo)) {
        throw ConfigError("histogram needs bins > 0 and hi > lo");
    }
    Histogram h{lo, hi, std::vector<std::size_t>(bins, 0)};
    for (double x : values) {
        auto b = static_cast<std::ptrdiff_t>(std::floor((x - lo) / (hi - lo) * static_cast<double>(bins)));
        b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    return h;
}

} // namespace rydqca::chaos
