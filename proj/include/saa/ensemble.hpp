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
#ifndef SAA_ENSEMBLE_HPP
#define SAA_ENSEMBLE_HPP

#include "saa/control.hpp"
#include "saa/dynamics.hpp"
#include "saa/regularizer.hpp"
#include "saa/sampling.hpp"

namespace saa
{

/// One control shared by N copies of the dynamics, one per sample.
struct EnsembleProblem {
    ProblemDef problem;
    RegularizerSpec spec;
    SampleSet samples;
    /// Worker threads for the per-sample loop; results do not depend on it.
    int threads = 1;

    EnsembleProblem() = default;
    EnsembleProblem(ProblemDef p, RegularizerSpec s, SampleSet xs, int nthreads = 1);
};

/// Smooth part h(u) = mean_i T(u, xi_i) + (alpha/2)||u||^2 and its gradient.
struct SmoothEvaluation {
    double sample_mean = 0.0;
    double value       = 0.0;
    Control gradient;
};

/// mean_i T(u, xi_i), without the regularizer.
double sample_mean_objective(const EnsembleProblem& ep, const Control& u);

/// mean_i T(u, xi_i) + psi(u); +inf outside the box.
double saa_objective(const EnsembleProblem& ep, const Control& u);

/// mean_i grad_u T(u, xi_i) + alpha u.
Control saa_smooth_gradient(const EnsembleProblem& ep, const Control& u);

/// Smooth value and gradient from a single forward/adjoint pass per sample.
SmoothEvaluation smooth_evaluation(const EnsembleProblem& ep, const Control& u);

/// ||u - prox_{psi_alpha}(u - smooth_gradient)|| with unit step.
double criticality_from_gradient(const Control& u, const Control& smooth_gradient, const RegularizerSpec& spec);

double criticality(const EnsembleProblem& ep, const Control& u);

/// Criticality with respect to a reference sample set (large N, typically Sobol').
double reference_criticality(const ProblemDef& problem, const RegularizerSpec& spec, const SampleSet& reference,
                             const Control& u, int threads = 1);

} // namespace saa

#endif // SAA_ENSEMBLE_HPP
