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
#include "rydqca/pxp_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

#include "rydqca/errors.hpp"
#include "rydqca/kernels/kernels.hpp"
#include "rydqca/linalg.hpp"

namespace rydqca::pxp {
namespace {

constexpr std::size_t kDenseCacheLimit = 64;

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

} // namespace

ConstrainedBasis::ConstrainedBasis(const AtomArray &array, std::size_t max_dimension) {
    const std::size_t n = array.size();
    if (n > 63) {
        throw ResourceError("constrained basis supports at most 63 atoms, got " +
                            std::to_string(n));
    }
    species_.reserve(n);
    for (const auto &atom : array.atoms) {
        species_.push_back(atom.species);
    }
    neighbors_.assign(n, {});
    neighbor_mask_.assign(n, 0);
    for (auto [a, b] : array.blockade_edges) {
        if (a >= n || b >= n || a == b) {
            throw ConfigError("blockade edge references an invalid atom");
        }
        if ((neighbor_mask_[a] & bit(b)) == 0) {
            neighbors_[a].push_back(b);
            neighbors_[b].push_back(a);
            neighbor_mask_[a] |= bit(b);
            neighbor_mask_[b] |= bit(a);
        }
    }
    for (auto &nb : neighbors_) {
        std::sort(nb.begin(), nb.end());
    }

    // Count first so an oversized request fails before allocating.
    const std::uint64_t count_limit = static_cast<std::uint64_t>(max_dimension) * 1024 + 1;
    std::uint64_t count = 0;
    auto count_rec = [&](auto &&self, std::size_t i, std::uint64_t bits) -> void {
        if (count >= count_limit) {
            return;
        }
        if (i == n) {
            ++count;
            return;
        }
        self(self, i + 1, bits);
        if ((bits & neighbor_mask_[i]) == 0) {
            self(self, i + 1, bits | bit(i));
        }
    };
    count_rec(count_rec, 0, 0);
    if (count > max_dimension) {
        throw ResourceError("constrained basis dimension " +
                            (count >= count_limit ? std::string("> ") : std::string()) +
                            std::to_string(count) + " exceeds the cap of " +
                            std::to_string(max_dimension));
    }

    states_.reserve(count);
    keys_.reserve(count);
    auto fill = [&](auto &&self, std::size_t i, std::uint64_t bits, std::uint64_t key) -> void {
        if (i == n) {
            states_.push_back(bits);
            keys_.push_back(key);
            return;
        }
        self(self, i + 1, bits, key);
        if ((bits & neighbor_mask_[i]) == 0) {
            self(self, i + 1, bits | bit(i), key | bit(n - 1 - i));
        }
    };
    fill(fill, 0, 0, 0);
}

std::optional<std::size_t> ConstrainedBasis::index_of(std::uint64_t bits) const {
    const std::size_t n = n_atoms();
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (bits & bit(i)) {
            key |= bit(n - 1 - i);
        }
    }
    if (n < 64 && (bits >> n) != 0) {
        return std::nullopt;
    }
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - keys_.begin());
}

bool ConstrainedBasis::allowed(std::uint64_t bits) const {
    for (std::size_t i = 0; i < n_atoms(); ++i) {
        if ((bits & bit(i)) && (bits & neighbor_mask_[i])) {
            return false;
        }
    }
    return n_atoms() >= 64 || (bits >> n_atoms()) == 0;
}

std::uint64_t ConstrainedBasis::species_mask(Species s) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n_atoms(); ++i) {
        if (species_[i] == s) {
            m |= bit(i);
        }
    }
    return m;
}

std::string ConstrainedBasis::bitstring(std::size_t k) const {
    std::string s(n_atoms(), 'g');
    for (std::size_t i = 0; i < n_atoms(); ++i) {
        if (states_[k] & bit(i)) {
            s[i] = 'r';
        }
    }
    return s;
}

std::shared_ptr<const ConstrainedBasis> enumerate_basis(const AtomArray &array,
                                                        const EngineOptions &options) {
    return std::make_shared<const ConstrainedBasis>(array, options.max_dimension);
}

double StateVector::norm() const { return std::sqrt(kernels::norm2(amplitudes)); }

Complex StateVector::amplitude(std::uint64_t bits) const {
    auto k = basis->index_of(bits);
    return k ? amplitudes[*k] : Complex(0.0);
}

StateVector basis_state(std::shared_ptr<const ConstrainedBasis> basis, std::uint64_t bits) {
    auto k = basis->index_of(bits);
    if (!k) {
        throw DomainError("configuration violates the blockade constraint");
    }
    StateVector s{std::move(basis), {}};
    s.amplitudes.assign(s.basis->dimension(), Complex(0.0));
    s.amplitudes[*k] = 1.0;
    return s;
}

StateVector embed_data_state(std::shared_ptr<const ConstrainedBasis> basis,
                             std::size_t n_data, const CVector &data) {
    if (data.size() != (std::size_t{1} << n_data)) {
        throw DomainError("data state has wrong length");
    }
    StateVector s{std::move(basis), {}};
    s.amplitudes.assign(s.basis->dimension(), Complex(0.0));
    for (std::size_t j = 0; j < data.size(); ++j) {
        auto k = s.basis->index_of(j);
        if (!k) {
            throw DomainError("data configuration blocked: data atoms must not share edges");
        }
        s.amplitudes[*k] = data[j];
    }
    return s;
}

CVector project_data_state(const StateVector &state, std::size_t n_data) {
    CVector out(std::size_t{1} << n_data);
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = state.amplitude(j);
    }
    return out;
}

Complex overlap(const StateVector &a, const StateVector &b) {
    return kernels::dot(a.amplitudes, b.amplitudes);
}

void PulseSegment::validate(std::size_t n_atoms) const {
    if (!(rabi > 0.0) || !std::isfinite(rabi)) {
        throw ConfigError("pulse Rabi frequency must be positive and finite");
    }
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw ConfigError("pulse duration must be finite and non-negative");
    }
    if (!std::isfinite(detuning)) {
        throw ConfigError("pulse detuning must be finite");
    }
    for (std::size_t f : frozen) {
        if (f >= n_atoms) {
            throw ConfigError("frozen atom " + std::to_string(f) + " does not exist");
        }
    }
    if (const auto *pw = std::get_if<PiecewisePhase>(&phase)) {
        if (pw->values.empty()) {
            throw ConfigError("piecewise phase schedule needs at least one value");
        }
        const double total = pw->dt * static_cast<double>(pw->values.size());
        if (std::abs(total - duration) > 1e-12 * std::max(1.0, duration)) {
            throw ConfigError("piecewise phase schedule: M * dt != duration");
        }
        for (double v : pw->values) {
            if (!std::isfinite(v)) {
                throw ConfigError("phase values must be finite");
            }
        }
    } else {
        const auto &lin = std::get<LinearPhase>(phase);
        if (!std::isfinite(lin.xi0) || !std::isfinite(lin.slope)) {
            throw ConfigError("phase schedule must be finite");
        }
    }
}

std::size_t PulseProgram::count(Species species) const {
    std::size_t c = 0;
    for (const auto &seg : segments) {
        if (const auto *p = std::get_if<PulseSegment>(&seg); p && p->species == species) {
            ++c;
        }
    }
    return c;
}

bool Engine::DenseKey::operator<(const DenseKey &o) const {
    return std::tie(drive, rabi, shift, t) < std::tie(o.drive, o.rabi, o.shift, o.t);
}

Engine::Engine(const AtomArray &array, EngineOptions options)
    : options_(options), basis_(enumerate_basis(array, options)) {}

std::shared_ptr<const Engine::Drive> Engine::drive(Species species,
                                                   const std::vector<std::size_t> &frozen) const {
    std::vector<std::size_t> key_frozen = frozen;
    std::sort(key_frozen.begin(), key_frozen.end());
    key_frozen.erase(std::unique(key_frozen.begin(), key_frozen.end()), key_frozen.end());
    auto key = std::make_pair(static_cast<int>(species), key_frozen);
    {
        std::lock_guard lock(mutex_);
        if (auto it = drives_.find(key); it != drives_.end()) {
            return it->second;
        }
    }

    const auto &b = *basis_;
    std::uint64_t driven = b.species_mask(species);
    for (std::size_t f : key_frozen) {
        driven &= ~bit(f);
    }
    std::vector<std::uint64_t> nmask(b.n_atoms(), 0);
    for (std::size_t i = 0; i < b.n_atoms(); ++i) {
        for (std::size_t j : b.neighbors()[i]) {
            nmask[i] |= bit(j);
        }
    }
    auto d = std::make_shared<Drive>();
    d->excited.resize(b.dimension());
    std::vector<std::size_t> degree(b.dimension(), 0);
    for (std::size_t k = 0; k < b.dimension(); ++k) {
        const std::uint64_t s = b.state(k);
        d->excited[k] = static_cast<double>(std::popcount(s & driven));
        for (std::size_t i = 0; i < b.n_atoms(); ++i) {
            if (!(driven & bit(i)) || (s & bit(i)) || (s & nmask[i])) {
                continue;
            }
            const auto r = b.index_of(s | bit(i));
            d->pairs.emplace_back(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(*r));
            ++degree[k];
            ++degree[*r];
        }
        d->max_excited = std::max(d->max_excited, d->excited[k]);
    }
    d->max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());

    std::lock_guard lock(mutex_);
    auto [it, inserted] = drives_.emplace(std::move(key), std::move(d));
    return it->second;
}

void Engine::apply_h0(const Drive &d, double rabi, double shift, const Complex *in,
                      Complex *out) const {
    const std::size_t dim = basis_->dimension();
    const double half = 0.5 * rabi;
    for (std::size_t k = 0; k < dim; ++k) {
        out[k] = shift * d.excited[k] * in[k];
    }
    for (auto [g, r] : d.pairs) {
        out[g] += half * in[r];
        out[r] += half * in[g];
    }
}

void Engine::apply_phase(const Drive &d, double xi, CVector &psi) const {
    if (xi == 0.0) {
        return;
    }
    // Powers of w by excitation count; counts are small integers.
    std::vector<Complex> powers(static_cast<std::size_t>(d.max_excited) + 1, 1.0);
    for (std::size_t m = 1; m < powers.size(); ++m) {
        powers[m] = std::exp(Complex(0.0, xi * static_cast<double>(m)));
    }
    for (std::size_t k = 0; k < psi.size(); ++k) {
        psi[k] *= powers[static_cast<std::size_t>(d.excited[k])];
    }
}

void Engine::propagate(const Drive &d, double rabi, double shift, double t, CVector &psi) const {
    if (t == 0.0) {
        return;
    }
    const std::size_t dim = basis_->dimension();
    if (d.pairs.empty()) {
        for (std::size_t k = 0; k < dim; ++k) {
            psi[k] *= std::exp(Complex(0.0, -shift * d.excited[k] * t));
        }
        return;
    }
    if (dim <= options_.dense_cap) {
        const DenseKey key{&d, rabi, shift, t};
        std::shared_ptr<const CMatrix> u;
        {
            std::lock_guard lock(mutex_);
            if (auto it = dense_.find(key); it != dense_.end()) {
                u = it->second;
            }
        }
        if (!u) {
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                      static_cast<Eigen::Index>(dim));
            for (std::size_t k = 0; k < dim; ++k) {
                h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = shift * d.excited[k];
            }
            for (auto [g, r] : d.pairs) {
                h(g, r) += 0.5 * rabi;
                h(r, g) += 0.5 * rabi;
            }
            u = std::make_shared<const CMatrix>(linalg::expm_symmetric(h, t));
            std::lock_guard lock(mutex_);
            if (dense_.size() >= kDenseCacheLimit) {
                dense_.clear();
            }
            dense_.emplace(key, u);
        }
        Eigen::Map<Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(dim));
        Eigen::VectorXcd out = (*u) * v;
        v = out;
        return;
    }
    linalg::KrylovOptions ko;
    ko.tol = options_.krylov_tol;
    linalg::expmv_lanczos(
        [&](const Complex *in, Complex *out) { apply_h0(d, rabi, shift, in, out); }, dim, t,
        psi.data(), ko);
}

StateVector Engine::hamiltonian_apply(const StateVector &state, Species species, double rabi,
                                      double phase, double detuning,
                                      const std::vector<std::size_t> &frozen) const {
    if (!std::isfinite(phase)) {
        throw DomainError("phase must be finite");
    }
    const auto d = drive(species, frozen);
    StateVector out{state.basis, CVector(state.amplitudes.size(), Complex(0.0))};
    const Complex down = 0.5 * rabi * std::exp(Complex(0.0, -phase)); // |g><r|
    const Complex up = std::conj(down);                              // |r><g|
    for (std::size_t k = 0; k < out.amplitudes.size(); ++k) {
        out.amplitudes[k] = detuning * d->excited[k] * state.amplitudes[k];
    }
    for (auto [g, r] : d->pairs) {
        out.amplitudes[g] += down * state.amplitudes[r];
        out.amplitudes[r] += up * state.amplitudes[g];
    }
    return out;
}

void Engine::apply_local(StateVector &state, const LocalUnitarySegment &seg) const {
    const auto &b = *basis_;
    for (const auto &[atom, u] : seg.ops) {
        if (atom >= b.n_atoms()) {
            throw ConfigError("local unitary targets a nonexistent atom");
        }
        std::uint64_t nmask = 0;
        for (std::size_t j : b.neighbors()[atom]) {
            nmask |= bit(j);
        }
        for (std::size_t k = 0; k < b.dimension(); ++k) {
            const std::uint64_t s = b.state(k);
            if ((s & bit(atom)) || (s & nmask)) {
                continue;
            }
            const std::size_t r = *b.index_of(s | bit(atom));
            const Complex ag = state.amplitudes[k];
            const Complex ar = state.amplitudes[r];
            state.amplitudes[k] = u(0, 0) * ag + u(0, 1) * ar;
            state.amplitudes[r] = u(1, 0) * ag + u(1, 1) * ar;
        }
    }
}

void Engine::evolve_segment(StateVector &state, const Segment &segment) const {
    if (state.basis != basis_) {
        throw ConfigError("state belongs to a different basis");
    }
    if (const auto *loc = std::get_if<LocalUnitarySegment>(&segment)) {
        apply_local(state, *loc);
        return;
    }
    const auto &seg = std::get<PulseSegment>(segment);
    seg.validate(basis_->n_atoms());
    if (seg.duration == 0.0) {
        return;
    }
    const auto d = drive(seg.species, seg.frozen);
    CVector &psi = state.amplitudes;
    // H(xi) = W(xi) H(0) W(xi)^dag with W(xi) = exp(i xi n_driven); a linear
    // phase ramp becomes a static shift of n_driven in the co-rotating frame.
    if (const auto *lin = std::get_if<LinearPhase>(&seg.phase)) {
        apply_phase(*d, -lin->xi0, psi);
        propagate(*d, seg.rabi, seg.detuning + lin->slope, seg.duration, psi);
        apply_phase(*d, lin->xi0 + lin->slope * seg.duration, psi);
        return;
    }
    const auto &pw = std::get<PiecewisePhase>(seg.phase);
    double prev = 0.0;
    for (double xi : pw.values) {
        apply_phase(*d, prev - xi, psi);
        propagate(*d, seg.rabi, seg.detuning, pw.dt, psi);
        prev = xi;
    }
    apply_phase(*d, prev, psi);
}

RunRecord Engine::run_program(const StateVector &initial, const PulseProgram &program) const {
    if (program.n_atoms != 0 && program.n_atoms != basis_->n_atoms()) {
        throw ConfigError("program and engine reference different arrays");
    }
    RunRecord rec{initial, {}, {}};
    rec.norms.reserve(program.segments.size());
    for (const auto &seg : program.segments) {
        evolve_segment(rec.state, seg);
        rec.norms.push_back(rec.state.norm());
        rec.leakage.push_back(ancilla_return_check(rec.state));
    }
    return rec;
}

double ancilla_return_check(const StateVector &state) {
    const std::uint64_t anc = state.basis->species_mask(Species::Ancilla);
    double p = 0.0;
    for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
        if ((state.basis->state(k) & anc) == 0) {
            p += std::norm(state.amplitudes[k]);
        }
    }
    return std::max(0.0, 1.0 - p);
}

SuperatomModel superatom_reduce(int size, double rabi) {
    if (size < 1) {
        throw DomainError("superatom size must be >= 1");
    }
    if (!(rabi > 0.0)) {
        throw DomainError("Rabi frequency must be positive");
    }
    return {size, rabi, std::sqrt(static_cast<double>(size)) * rabi};
}

} // namespace rydqca::pxp
