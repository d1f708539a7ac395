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
#include "saa/ensemble.hpp"
#include "saa/parallel.hpp"

#include <limits>
#include <stdexcept>

namespace saa
{

EnsembleProblem::EnsembleProblem(ProblemDef p, RegularizerSpec s, SampleSet xs, int nthreads)
    : problem(std::move(p))
    , spec(std::move(s))
    , samples(std::move(xs))
    , threads(nthreads)
{
    if (samples.dim != problem.parameters.dim()) {
        throw std::invalid_argument("EnsembleProblem: sample dimension " + std::to_string(samples.dim) +
                                    " does not match parameter dimension " +
                                    std::to_string(problem.parameters.dim()));
    }
    if (samples.size() < 1) {
        throw std::invalid_argument("EnsembleProblem: empty sample set");
    }
    if (spec.channels() != problem.control_dim) {
        throw std::invalid_argument("EnsembleProblem: regularizer box has wrong channel count");
    }
}

namespace
{

template <typename Fn>
void for_each_sample(const EnsembleProblem& ep, Fn&& fn)
{
    parallel_for(ep.samples.size(), ep.threads, [&](int i) {
        try {
            fn(i, ep.samples.point(i));
        }
        catch (const IntegrationDiverged& e) {
            throw IntegrationDiverged(e.node(), i);
        }
    });
}

} // namespace

double sample_mean_objective(const EnsembleProblem& ep, const Control& u)
{
    std::vector<double> values(ep.samples.size());
    for_each_sample(ep, [&](int i, const Eigen::VectorXd& xi) {
        values[i] = eval_objective_sample(ep.problem, u, xi);
    });
    return tree_sum(std::move(values)) / ep.samples.size();
}

double saa_objective(const EnsembleProblem& ep, const Control& u)
{
    const double psi = psi_value(u, ep.spec);
    if (!std::isfinite(psi)) {
        return std::numeric_limits<double>::infinity();
    }
    return sample_mean_objective(ep, u) + psi;
}

SmoothEvaluation smooth_evaluation(const EnsembleProblem& ep, const Control& u)
{
    const int n = ep.samples.size();
    std::vector<double> values(n);
    std::vector<Control::Matrix> grads(n);
    for_each_sample(ep, [&](int i, const Eigen::VectorXd& xi) {
        auto eval = value_and_gradient_sample(ep.problem, u, xi);
        values[i] = eval.value;
        grads[i]  = std::move(eval.gradient.values);
    });

    SmoothEvaluation out;
    out.sample_mean    = tree_sum(std::move(values)) / n;
    out.value          = out.sample_mean + 0.5 * ep.spec.alpha * squared_norm(u);
    out.gradient       = Control(u.grid, tree_sum(std::move(grads)) / n);
    out.gradient.values += ep.spec.alpha * u.values;
    return out;
}

Control saa_smooth_gradient(const EnsembleProblem& ep, const Control& u)
{
    const int n = ep.samples.size();
    std::vector<Control::Matrix> grads(n);
    for_each_sample(ep, [&](int i, const Eigen::VectorXd& xi) {
        grads[i] = gradient_sample(ep.problem, u, xi).values;
    });
    Control g(u.grid, tree_sum(std::move(grads)) / n);
    g.values += ep.spec.alpha * u.values;
    return g;
}

double criticality_from_gradient(const Control& u, const Control& smooth_gradient, const RegularizerSpec& spec)
{
    Control step(u.grid, u.values - smooth_gradient.values);
    return distance(u, prox_psi_alpha(step, 1.0, spec));
}

double criticality(const EnsembleProblem& ep, const Control& u)
{
    return criticality_from_gradient(u, saa_smooth_gradient(ep, u), ep.spec);
}

double reference_criticality(const ProblemDef& problem, const RegularizerSpec& spec, const SampleSet& reference,
                             const Control& u, int threads)
{
    return criticality(EnsembleProblem(problem, spec, reference, threads), u);
}

} // namespace saa
