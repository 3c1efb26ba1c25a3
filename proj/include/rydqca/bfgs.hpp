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

#include <functional>
#include <string>

#include "rydqca/types.hpp"

namespace rydqca::opt {

/// Returns f(x) and writes the gradient into grad (already sized).
using Objective = std::function<double(const RVector &x, RVector &grad)>;

struct BfgsOptions {
    double grad_tol = 1e-12;
    double step_tol = 1e-15;
    int max_iterations = 4000;
    int max_evaluations = 100000;
    /// Stop early once f <= f_target (disabled by default).
    double f_target = -1.0;
    double c1 = 1e-4;
    double c2 = 0.9;
};

enum class BfgsStatus { GradientTolerance, StepTolerance, TargetReached, IterationLimit,
                        EvaluationLimit, LineSearchFailed };

struct BfgsResult {
    RVector x;
    double f = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    BfgsStatus status = BfgsStatus::IterationLimit;
    bool converged = false;
};

std::string to_string(BfgsStatus status);

/// Dense inverse-Hessian BFGS with a strong-Wolfe line search. On line
/// search failure the best iterate seen is returned with converged=false.
BfgsResult bfgs_minimize(const Objective &f, RVector x0, const BfgsOptions &options = {});

} // namespace rydqca::opt
