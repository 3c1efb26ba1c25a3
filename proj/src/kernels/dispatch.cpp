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
#include <string>

#include "rydqca/errors.hpp"
#include "rydqca/kernels/kernels.hpp"

namespace rydqca::kernels {

#ifndef RYDQCA_HAVE_AVX2
const KernelTable *avx2_table() { return nullptr; }
#endif

bool cpu_supports_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const KernelTable *initial_table() {
    const char *env = std::getenv("RYDQCA_KERNELS");
    const std::string want = env ? env : "auto";
    if (want == "scalar") {
        return &scalar_table();
    }
    if (avx2_table() != nullptr && cpu_supports_avx2()) {
        return avx2_table();
    }
    return &scalar_table();
}

std::atomic<const KernelTable *> &current() {
    static std::atomic<const KernelTable *> table{initial_table()};
    return table;
}

} // namespace

const KernelTable &active() { return *current().load(std::memory_order_relaxed); }

void select(Backend backend) {
    if (backend == Backend::Scalar) {
        current().store(&scalar_table());
        return;
    }
    if (avx2_table() == nullptr || !cpu_supports_avx2()) {
        throw ConfigError("AVX2 kernels are not available on this build/CPU");
    }
    current().store(avx2_table());
}

std::string_view active_name() { return active().name; }

} // namespace rydqca::kernels
