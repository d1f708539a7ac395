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
#include "saa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace saa
{

void SolverOptions::validate() const
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("solver: tol must be > 0");
    }
    if (max_iters < 0) {
        throw std::invalid_argument("solver: max_iters must be >= 0");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("solver: gamma must be > 0");
    }
    if (!(shrink > 0.0 && shrink < 1.0 && growth > 1.0)) {
        throw std::invalid_argument("solver: need 0 < shrink < 1 < growth");
    }
}

namespace
{

// Rounding allowance in objective comparisons; h is evaluated to a few ulps.
double slack(double value)
{
    return 1e-12 * (std::abs(value) + 1.0);
}

double composite(const SmoothEvaluation& e, const Control& u, const RegularizerSpec& spec)
{
    return e.value + psi_alpha_value(u, spec);
}

struct Step {
    Control next;
    SmoothEvaluation eval;
    double gamma;
};

} // namespace

SolveReport solve(const EnsembleProblem& ep, const Control& u0, const SolverOptions& opts)
{
    opts.validate();
    if (!in_box(u0, ep.spec)) {
        throw std::invalid_argument("solve: initial control is outside the box");
    }
    if (!std::isfinite(saa_objective(ep, u0))) {
        throw std::runtime_error("solve: objective is not finite at the initial control");
    }

    SolveReport report;
    report.provenance = ep.samples.provenance;
    report.gamma_min  = std::numeric_limits<double>::infinity();
    report.gamma_max  = 0.0;

    Control u           = u0;
    SmoothEvaluation eu = smooth_evaluation(ep, u);
    Control y           = u;
    SmoothEvaluation ey = eu;
    double t            = 1.0;
    double gamma        = opts.gamma;

    auto take_step = [&](const Control& base, const SmoothEvaluation& eb) -> Step {
        while (true) {
            Control trial(base.grid, base.values - gamma * eb.gradient.values);
            Control next           = prox_psi_alpha(trial, gamma, ep.spec);
            SmoothEvaluation enext = smooth_evaluation(ep, next);
            if (opts.step_mode == StepMode::fixed) {
                return {std::move(next), std::move(enext), gamma};
            }
            Control d(base.grid, next.values - base.values);
            const double model = eb.value + inner(eb.gradient, d) + squared_norm(d) / (2.0 * gamma);
            if (enext.value <= model + slack(eb.value)) {
                return {std::move(next), std::move(enext), gamma};
            }
            gamma *= opts.shrink;
            ++report.backtracks;
            if (gamma < 1e-300) {
                throw std::runtime_error("solve: backtracking step underflow");
            }
        }
    };

    int it = 0;
    for (;; ++it) {
        report.criticality = criticality_from_gradient(u, eu.gradient, ep.spec);
        if (opts.observer) {
            opts.observer(it, u, composite(eu, u, ep.spec), report.criticality);
        }
        if (report.criticality <= opts.tol) {
            report.converged = true;
            break;
        }
        if (it >= opts.max_iters) {
            break;
        }

        Step step = take_step(y, ey);
        report.gamma_min  = std::min(report.gamma_min, step.gamma);
        report.gamma_max  = std::max(report.gamma_max, step.gamma);
        report.gamma_last = step.gamma;

        if (opts.step_mode == StepMode::fixed && !opts.accelerate) {
            const double before = composite(eu, u, ep.spec);
            const double after  = composite(step.eval, step.next, ep.spec);
            if (!(after <= before + slack(before))) {
                throw StepTooLarge("solve: objective increased from " + std::to_string(before) + " to " +
                                   std::to_string(after) + " with fixed step " + std::to_string(step.gamma) +
                                   "; reduce gamma or use backtracking");
            }
        }
        else if (opts.step_mode == StepMode::backtracking) {
            gamma *= opts.growth;
        }

        if (opts.accelerate) {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double restart =
                ((y.values - step.next.values).array() * (step.next.values - u.values).array()).sum();
            if (restart > 0.0) {
                t = 1.0;
                y = step.next;
                ey = step.eval;
            }
            else {
                y = Control(u.grid, step.next.values + ((t - 1.0) / t_next) * (step.next.values - u.values));
                ey = smooth_evaluation(ep, y);
                t  = t_next;
            }
            u  = std::move(step.next);
            eu = std::move(step.eval);
        }
        else {
            u  = std::move(step.next);
            eu = std::move(step.eval);
            y  = u;
            ey = eu;
        }
    }

    report.iterations = it;
    if (report.gamma_max == 0.0) {
        report.gamma_min = report.gamma_max = report.gamma_last = gamma;
    }
    report.value  = saa_objective(ep, u);
    report.u_star = std::move(u);
    return report;
}

} // namespace saa
