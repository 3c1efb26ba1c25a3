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
#include "rydqca/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rydqca/errors.hpp"

namespace rydqca::opt {
namespace {

using Vec = Eigen::VectorXd;

struct Point {
    double a = 0.0;
    double f = 0.0;
    double d = 0.0; // directional derivative
};

/// Minimizer of the cubic interpolating two points with slopes, clipped to
/// the interior of [lo, hi].
double cubic_step(const Point &p, const Point &q) {
    const double d1 = p.d + q.d - 3.0 * (p.f - q.f) / (p.a - q.a);
    const double disc = d1 * d1 - p.d * q.d;
    double a;
    if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), q.a - p.a);
        a = q.a - (q.a - p.a) * (q.d + d2 - d1) / (q.d - p.d + 2.0 * d2);
    } else {
        a = 0.5 * (p.a + q.a);
    }
    const double lo = std::min(p.a, q.a);
    const double hi = std::max(p.a, q.a);
    const double margin = 0.1 * (hi - lo);
    if (!std::isfinite(a) || a < lo + margin || a > hi - margin) {
        a = 0.5 * (lo + hi);
    }
    return a;
}

} // namespace

std::string to_string(BfgsStatus status) {
    switch (status) {
    case BfgsStatus::GradientTolerance:
        return "gradient-tolerance";
    case BfgsStatus::StepTolerance:
        return "step-tolerance";
    case BfgsStatus::TargetReached:
        return "target-reached";
    case BfgsStatus::IterationLimit:
        return "iteration-limit";
    case BfgsStatus::EvaluationLimit:
        return "evaluation-limit";
    case BfgsStatus::LineSearchFailed:
        return "line-search-failed";
    }
    return "unknown";
}

BfgsResult bfgs_minimize(const Objective &f, RVector x0, const BfgsOptions &options) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw DomainError("BFGS needs at least one parameter");
    }
    BfgsResult res;
    RVector grad_buf(n);
    auto eval = [&](const Vec &x, Vec &g) {
        RVector xs(x.data(), x.data() + x.size());
        const double v = f(xs, grad_buf);
        ++res.evaluations;
        g = Eigen::Map<const Vec>(grad_buf.data(), static_cast<Eigen::Index>(n));
        if (!std::isfinite(v)) {
            throw NumericError("objective returned a non-finite value");
        }
        return v;
    };

    Vec x = Eigen::Map<const Vec>(x0.data(), static_cast<Eigen::Index>(n));
    Vec g;
    double fx = eval(x, g);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                     static_cast<Eigen::Index>(n));
    bool first = true;

    auto finish = [&](BfgsStatus status) {
        res.x.assign(x.data(), x.data() + x.size());
        res.f = fx;
        res.grad_norm = g.norm();
        res.status = status;
        res.converged = status == BfgsStatus::GradientTolerance ||
                        status == BfgsStatus::StepTolerance ||
                        status == BfgsStatus::TargetReached;
        return res;
    };

    for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
        if (fx <= options.f_target) {
            return finish(BfgsStatus::TargetReached);
        }
        if (g.norm() < options.grad_tol) {
            return finish(BfgsStatus::GradientTolerance);
        }
        Vec p = -hinv * g;
        double d0 = p.dot(g);
        if (!(d0 < 0.0)) {
            hinv.setIdentity();
            p = -g;
            d0 = p.dot(g);
        }
        // First step scaled so that it is at most unit length in parameter space.
        double a1 = 1.0;
        if (first) {
            a1 = std::min(1.0, 1.0 / p.norm());
        }

        // Strong-Wolfe bracketing followed by zoom.
        const Point p0{0.0, fx, d0};
        Point prev = p0;
        Point lo, hi;
        Vec x_new, g_new;
        double f_new = fx;
        bool found = false;
        bool bracketed = false;
        double a = a1;
        for (int k = 0; k < 30; ++k) {
            if (res.evaluations >= options.max_evaluations) {
                return finish(BfgsStatus::EvaluationLimit);
            }
            x_new = x + a * p;
            f_new = eval(x_new, g_new);
            const Point cur{a, f_new, g_new.dot(p)};
            if (f_new > fx + options.c1 * a * d0 || (k > 0 && f_new >= prev.f)) {
                lo = prev;
                hi = cur;
                bracketed = true;
                break;
            }
            if (std::abs(cur.d) <= -options.c2 * d0) {
                found = true;
                break;
            }
            if (cur.d >= 0.0) {
                lo = cur;
                hi = prev;
                bracketed = true;
                break;
            }
            prev = cur;
            a *= 2.0;
        }
        if (!found && bracketed) {
            for (int k = 0; k < 40; ++k) {
                if (res.evaluations >= options.max_evaluations) {
                    return finish(BfgsStatus::EvaluationLimit);
                }
                a = cubic_step(lo, hi);
                if (std::abs(hi.a - lo.a) * p.norm() < 1e-300) {
                    break;
                }
                x_new = x + a * p;
                f_new = eval(x_new, g_new);
                const Point cur{a, f_new, g_new.dot(p)};
                if (f_new > fx + options.c1 * a * d0 || f_new >= lo.f) {
                    hi = cur;
                } else {
                    if (std::abs(cur.d) <= -options.c2 * d0) {
                        found = true;
                        break;
                    }
                    if (cur.d * (hi.a - lo.a) >= 0.0) {
                        hi = lo;
                    }
                    lo = cur;
                }
                if (std::abs(hi.a - lo.a) * p.norm() < options.step_tol) {
                    break;
                }
            }
            if (!found && lo.a > 0.0 && lo.f < fx) {
                // Sufficient decrease holds at lo; accept it without the
                // curvature condition.
                a = lo.a;
                x_new = x + a * p;
                f_new = eval(x_new, g_new);
                found = f_new < fx;
            }
        }
        if (!found) {
            if (a * p.norm() < options.step_tol || std::abs(d0) < options.grad_tol * options.grad_tol) {
                return finish(BfgsStatus::StepTolerance);
            }
            return finish(BfgsStatus::LineSearchFailed);
        }

        const Vec s = x_new - x;
        const Vec y = g_new - g;
        x = x_new;
        g = g_new;
        fx = f_new;
        const double sy = s.dot(y);
        if (sy > 1e-300) {
            if (first) {
                hinv *= sy / y.squaredNorm();
                first = false;
            }
            const double rho = 1.0 / sy;
            const Vec hy = hinv * y;
            const double yhy = y.dot(hy);
            hinv += (rho * rho * yhy + rho) * (s * s.transpose()) -
                    rho * (hy * s.transpose() + s * hy.transpose());
        }
        if (s.norm() < options.step_tol) {
            ++res.iterations;
            return finish(BfgsStatus::StepTolerance);
        }
    }
    return finish(BfgsStatus::IterationLimit);
}

} // namespace rydqca::opt
