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
#include "rydqca/bfgs.hpp"

using namespace rydqca;
using namespace rydqca::opt;

TEST_SUITE("bfgs") {

TEST_CASE("Rosenbrock minimum") {
    auto f = [](const RVector &x, RVector &g) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        g[0] = -2.0 * a - 400.0 * x[0] * b;
        g[1] = 200.0 * b;
        return a * a + 100.0 * b * b;
    };
    const auto r = bfgs_minimize(f, {-1.2, 1.0});
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.f < 1e-16);
}

TEST_CASE("ill-conditioned quadratic converges to the gradient tolerance") {
    const std::vector<double> d{1.0, 10.0, 100.0, 1000.0};
    auto f = [&](const RVector &x, RVector &g) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            g[i] = d[i] * (x[i] - 1.0);
            s += 0.5 * d[i] * (x[i] - 1.0) * (x[i] - 1.0);
        }
        return s;
    };
    const auto r = bfgs_minimize(f, {0.0, 0.0, 0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.grad_norm < 1e-10);
    for (double x : r.x) {
        CHECK(x == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("target value stops early") {
    auto f = [](const RVector &x, RVector &g) {
        g[0] = 2.0 * x[0];
        return x[0] * x[0];
    };
    BfgsOptions o;
    o.f_target = 0.5;
    const auto r = bfgs_minimize(f, {3.0}, o);
    CHECK(r.f <= 0.5);
    CHECK(r.status == BfgsStatus::TargetReached);
}

TEST_CASE("iteration cap is honoured") {
    auto f = [](const RVector &x, RVector &g) {
        g[0] = std::cos(x[0]) + 0.1;
        return std::sin(x[0]) + 0.1 * x[0];
    };
    BfgsOptions o;
    o.max_iterations = 3;
    const auto r = bfgs_minimize(f, {0.0}, o);
    CHECK(r.iterations <= 3);
}

}
