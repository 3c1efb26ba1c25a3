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
#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "rydqca/errors.hpp"
#include "rydqca/parallel.hpp"

using namespace rydqca;

TEST_SUITE("parallel") {

TEST_CASE("every index runs exactly once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (auto &h : hits) {
        CHECK(h.load() == 1);
    }
}

TEST_CASE("lowest failing index is rethrown") {
    try {
        parallel_for(
            100,
            [](std::size_t i) {
                if (i == 17 || i == 60) {
                    throw std::runtime_error("fail " + std::to_string(i));
                }
            },
            3);
        FAIL("expected an exception");
    } catch (const std::runtime_error &e) {
        CHECK(std::string(e.what()) == "fail 17");
    }
}

TEST_CASE("thread count from the environment") {
    setenv("RYDQCA_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    setenv("RYDQCA_THREADS", "zero", 1);
    CHECK_THROWS_AS(default_threads(), ConfigError);
    unsetenv("RYDQCA_THREADS");
    CHECK(default_threads() >= 1);
}

}
