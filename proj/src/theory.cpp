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
#include "saa/theory.hpp"
#include "saa/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace saa
{

void TheoryConstants::validate() const
{
    if (L_f < 1.0 || L_F < 1.0 || V0 < 1.0 || r_psi < 1.0) {
        throw std::invalid_argument("theory: L_f, L_F, V0 and r_psi must be >= 1");
    }
    if (m < 1 || !(alpha > 0.0) || !(rho > 0.0) || c0 < 0.0 || c0_grad < 0.0 || L_grad_T < 0.0) {
        throw std::invalid_argument("theory: need m >= 1, alpha > 0, rho > 0 and nonnegative variance constants");
    }
}

double TheoryConstants::L_T() const
{
    return std::sqrt(2.0) * L_F * L_f * std::exp(L_f);
}

GradientRadius radius_R(const TheoryConstants& tc)
{
    const double R0 = tc.L_f * (1.0 + tc.L_F) * std::exp(tc.L_f);
    const double R  = R0 + 6.0 * tc.L_f * tc.L_f * (1.0 + tc.V0) * std::exp(2.0 * tc.L_f * tc.r_psi) * R0;
    return {R0, R};
}

double covering_bound_log2(int m, double R, double alpha, double nu, double rho)
{
    if (!(nu > 0.0)) {
        throw std::invalid_argument("covering_bound_log2: nu must be > 0");
    }
    return rho * std::sqrt(double(m)) * (R * m / (alpha * nu));
}

double entropy_integral_bound(double c1, double D)
{
    if (c1 < 0.0 || !(D > 0.0)) {
        throw std::invalid_argument("entropy_integral_bound: need c1 >= 0 and D > 0");
    }
    return std::sqrt(D / 2.0) * (std::sqrt(c1 + D / 2.0) + std::sqrt(c1));
}

double rate_bound(long N, const RateBoundInputs& in)
{
    if (N < 1) {
        throw std::invalid_argument("rate_bound: N must be >= 1");
    }
    const double root_n  = std::sqrt(double(N));
    const double entropy = std::sqrt(1.0 + in.rho * std::sqrt(double(in.m)) * in.R * in.m / in.alpha);
    return in.c0 / root_n + 16.0 * std::sqrt(3.0) * in.lipschitz * in.r_psi / root_n * entropy;
}

double value_rate_bound(long N, const TheoryConstants& tc, RateKind kind)
{
    tc.validate();
    RateBoundInputs in;
    in.r_psi = tc.r_psi;
    in.rho   = tc.rho;
    in.R     = radius_R(tc).R;
    in.m     = tc.m;
    in.alpha = tc.alpha;
    if (kind == RateKind::value) {
        in.lipschitz = tc.L_T();
        in.c0        = tc.c0;
    }
    else {
        in.lipschitz = tc.L_grad_T;
        in.c0        = tc.c0_grad;
    }
    return rate_bound(N, in);
}

LipschitzEstimate estimate_lipschitz(const ProblemDef& problem, const RegularizerSpec& spec, const ControlGrid& grid,
                                     int samples, std::uint64_t seed)
{
    using Vector = ProblemDef::Vector;
    LipschitzEstimate est;
    const SampleSet xs = sample_iid(problem.parameters, samples, seed);
    std::mt19937_64 rng(derive_seed(seed, 1));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double r = 2.0 * spec.r_psi();

    Vector prev_final;
    Vector prev_grad;
    for (int i = 0; i < samples; ++i) {
        const Vector xi = xs.point(i);
        Control u(grid);
        for (Eigen::Index k = 0; k < u.values.size(); ++k) {
            u.values.data()[k] = r * unit(rng);
        }
        est.V0 = std::max(est.V0, problem.initial_state(xi).norm());
        est.L_f = std::max(est.L_f, problem.rhs(Vector::Zero(problem.state_dim), Vector::Zero(problem.control_dim), xi).norm());

        const auto traj = integrate_forward(problem, u, xi);
        for (Eigen::Index node = 0; node < traj.states.rows(); ++node) {
            const Vector x  = traj.states.row(node).transpose();
            const auto k    = std::min<Eigen::Index>(node / problem.steps_per_interval, grid.intervals - 1);
            const Vector uk = u.values.row(k).transpose();
            est.L_f = std::max(est.L_f, problem.jacobian(x, uk, xi).operatorNorm());
            est.L_f = std::max(est.L_f, problem.control_matrix(x, xi).operatorNorm());
        }
        const Vector xf = traj.final_state();
        const Vector gf = problem.terminal_gradient(xf, xi);
        est.L_F = std::max(est.L_F, gf.norm());
        if (i > 0) {
            const double dx = (xf - prev_final).norm();
            if (dx > 0.0) {
                est.L_F = std::max(est.L_F, (gf - prev_grad).norm() / dx);
            }
        }
        prev_final = xf;
        prev_grad  = gf;
    }
    return est;
}

} // namespace saa
