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

#include <cstddef>
#include <functional>

namespace rydqca {

/// Thread count from RYDQCA_THREADS, else hardware concurrency (>= 1).
std::size_t default_threads();

/// Runs body(i) for i in [0, n). Each index must write only its own output
/// slot; results are then independent of the thread count. The exception
/// thrown by the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body,
                  std::size_t threads = 0);

} // namespace rydqca
