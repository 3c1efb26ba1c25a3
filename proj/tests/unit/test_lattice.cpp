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
#include <cmath>

#include "doctest.h"
#include "rydqca/errors.hpp"
#include "rydqca/lattice.hpp"

using namespace rydqca;
using namespace rydqca::lattice;

namespace {

LatticeSpec spec(Family f, std::vector<int> extent, Boundary b = Boundary::Open, bool trim = false) {
    LatticeSpec s;
    s.family = f;
    s.extent = std::move(extent);
    s.boundary = b;
    s.trim_dangling = trim;
    return s;
}

std::size_t count_class(const DataGraph &g, const std::string &c) {
    std::size_t n = 0;
    for (const auto &b : g.bonds) {
        n += b.bond_class == c;
    }
    return n;
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("chain bond counts") {
    CHECK(build_graph(spec(Family::Chain, {5})).bonds.size() == 4);
    CHECK(build_graph(spec(Family::Chain, {5}, Boundary::Periodic)).bonds.size() == 5);
}

TEST_CASE("square lattice classes") {
    const auto g = build_graph(spec(Family::Square, {3, 2}));
    CHECK(g.size() == 6);
    CHECK(count_class(g, "x") == 4);
    CHECK(count_class(g, "y") == 3);
    const auto p = build_graph(spec(Family::Square, {3, 3}, Boundary::Periodic));
    for (int d : p.degrees()) {
        CHECK(d == 4);
    }
}

TEST_CASE("periodic honeycomb is 3-regular with balanced classes") {
    const auto g = build_graph(spec(Family::Honeycomb, {3, 3}, Boundary::Periodic));
    CHECK(g.size() == 18);
    for (int d : g.degrees()) {
        CHECK(d == 3);
    }
    for (const char *c : {"X", "Y", "Z"}) {
        CHECK(count_class(g, c) == 9);
    }
}

TEST_CASE("trimmed 2x2 honeycomb patch is a single hexagon") {
    const auto g = build_graph(spec(Family::Honeycomb, {2, 2}, Boundary::Open, true));
    CHECK(g.size() == 6);
    CHECK(g.bonds.size() == 6);
    for (int d : g.degrees()) {
        CHECK(d == 2);
    }
    for (const char *c : {"X", "Y", "Z"}) {
        CHECK(count_class(g, c) == 2);
    }
}

TEST_CASE("neighboring data sites sit two spacings apart") {
    for (auto f : {Family::Chain, Family::Square, Family::Honeycomb}) {
        const auto s = f == Family::Chain ? spec(f, {4}) : spec(f, {2, 2});
        const auto g = build_graph(s);
        for (const auto &b : g.bonds) {
            const double dx = g.positions[b.a].x - g.positions[b.b].x;
            const double dy = g.positions[b.a].y - g.positions[b.b].y;
            CHECK(std::hypot(dx, dy) == doctest::Approx(2.0));
        }
    }
}

TEST_CASE("invalid specs are configuration errors") {
    CHECK_THROWS_AS(build_graph(spec(Family::Chain, {4, 4})), ConfigError);
    CHECK_THROWS_AS(build_graph(spec(Family::Square, {0, 2})), ConfigError);
    CHECK_THROWS_AS(build_graph(spec(Family::Chain, {2}, Boundary::Periodic)), ConfigError);
    CHECK_THROWS_AS(build_graph(spec(Family::Square, {3, 3}, Boundary::Periodic, true)), ConfigError);
}

TEST_CASE("atom array invariants") {
    GadgetAssignment ga;
    ga.sizes = {{"X", 3}, {"Y", 2}, {"Z", 1}};
    const auto arr = build_array(spec(Family::Honeycomb, {2, 2}, Boundary::Open, true), ga);
    CHECK(arr.n_data == 6);
    CHECK(arr.size() == 6 + 2 * (3 + 2 + 1));
    CHECK_NOTHROW(arr.validate());
    for (const auto &g : arr.gadgets) {
        const std::size_t want = g.bond_class == "X" ? 3 : g.bond_class == "Y" ? 2 : 1;
        CHECK(g.ancillas.size() == want);
    }
    // No data-data and exactly the declared data-ancilla blockade edges.
    for (const auto &[a, b] : arr.blockade_edges) {
        CHECK((arr.atoms[a].species != Species::Data || arr.atoms[b].species != Species::Data));
    }
}

TEST_CASE("per-bond override and bad assignments") {
    GadgetAssignment ga = GadgetAssignment::uniform(Family::Chain, 1);
    ga.sizes["#1"] = 2;
    const auto arr = build_array(spec(Family::Chain, {4}), ga);
    CHECK(arr.gadgets[0].ancillas.size() == 1);
    CHECK(arr.gadgets[1].ancillas.size() == 2);
    ga.sizes["#1"] = 4;
    CHECK_THROWS_AS(build_array(spec(Family::Chain, {4}), ga), ConfigError);
    GadgetAssignment bad;
    bad.sizes = {{"x", 1}, {"nope", 1}};
    CHECK_THROWS_AS(build_array(spec(Family::Chain, {4}), bad), ConfigError);
}

TEST_CASE("blockade audit reproduces the shell ratios") {
    const auto hc = build_array(spec(Family::Honeycomb, {4, 4}, Boundary::Periodic),
                                GadgetAssignment::uniform(Family::Honeycomb, 1));
    const auto a = blockade_audit(hc);
    CHECK(a.ratio_unwanted_over_blockade == doctest::Approx(2.0 / 343.0).epsilon(1e-12));
    CHECK(a.ratio_unwanted_over_blockade < 1.0);

    AuditOptions o;
    o.inter_species_only = false;
    const auto c = blockade_audit(reference_pxp_chain(10, Boundary::Open), o);
    CHECK(c.ratio_unwanted_over_blockade == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("audit error paths") {
    CHECK_THROWS_AS(blockade_audit(AtomArray{}), ConfigError);
    const auto arr = build_array(spec(Family::Chain, {3}), GadgetAssignment::uniform(Family::Chain, 1));
    AuditOptions o;
    o.exponent = 0.0;
    CHECK_THROWS_AS(blockade_audit(arr, o), DomainError);
    auto clash = arr;
    clash.atoms[1].position = clash.atoms[0].position;
    CHECK_THROWS_AS(blockade_audit(clash), GeometryError);
}

TEST_CASE("minimum-image distance on periodic arrays") {
    const auto arr = build_array(spec(Family::Chain, {4}, Boundary::Periodic),
                                 GadgetAssignment::uniform(Family::Chain, 1));
    CHECK(distance(arr, 0, 3) == doctest::Approx(2.0));
}

}
