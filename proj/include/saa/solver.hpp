/*
* Copyright (C) 2026 The saa-control authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef SAA_SOLVER_HPP
#define SAA_SOLVER_HPP

#include "saa/ensemble.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace saa
{

enum class StepMode { fixed, backtracking };

struct SolverOptions {
    double tol    = 1e-8;
    int max_iters = 10000;
    StepMode step_mode = StepMode::backtracking;
    /// Fixed step, or initial trial step for backtracking.
    double gamma  = 1.0;
    double shrink = 0.5;
    double growth = 1.1;
    /// FISTA-type extrapolation with gradient-based restart.
    bool accelerate = false;
    /// Called once per iterate (including the initial one) with the
    /// composite objective and criticality at that iterate.
    std::function<void(int, const Control&, double, double)> observer;

    void validate() const;
};

/// Raised when a fixed step makes the composite objective increase.
class StepTooLarge : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct SolveReport {
    Control u_star;
    /// saa_objective(u_star).
    double value       = 0.0;
    double criticality = 0.0;
    int iterations     = 0;
    bool converged     = false;
    int backtracks     = 0;
    double gamma_min   = 0.0;
    double gamma_max   = 0.0;
    double gamma_last  = 0.0;
    SampleProvenance provenance;
};

/**
 * Proximal gradient iteration u+ = prox_{gamma psi_alpha}(u - gamma grad h(u)),
 * h = sample mean + (alpha/2)||.||^2, stopped at the first iterate whose
 * criticality is <= tol. Backtracking enforces
 *     h(u+) <= h(u) + <grad h(u), u+ - u> + ||u+ - u||^2 / (2 gamma).
 */
SolveReport solve(const EnsembleProblem& ep, const Control& u0, const SolverOptions& opts = {});

} // namespace saa

#endif // SAA_SOLVER_HPP
