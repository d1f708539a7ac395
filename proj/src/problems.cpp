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
#include "saa/problems.hpp"

#include <numbers>

namespace saa
{

using Vector = ProblemDef::Vector;
using Matrix = ProblemDef::Matrix;

ParameterBox oscillator_box()
{
    Eigen::VectorXd lo(5), hi(5);
    lo << 0.0, -5.0, -5.0, -0.5, -0.5;
    hi << 2.0 * std::numbers::pi, 5.0, 5.0, 0.5, 0.5;
    return {lo, hi};
}

ParameterBox vaccination_box(const VaccinationConfig& cfg)
{
    return {(1.0 - cfg.sigma) * cfg.nominal, (1.0 + cfg.sigma) * cfg.nominal};
}

ProblemDef make_oscillator(const OscillatorConfig& cfg)
{
    ProblemDef p;
    p.state_dim          = 2;
    p.control_dim        = 2;
    p.parameters         = oscillator_box();
    p.steps_per_interval = cfg.steps_per_interval;

    p.drift = [](const Vector& x, const Vector& xi, Vector& f) {
        f(0) = -xi(0) * x(1) + xi(1);
        f(1) = xi(0) * x(0) + xi(2);
    };
    p.control_field  = [](const Vector&, const Vector&, Matrix& B) { B.setIdentity(); };
    p.state_jacobian = [](const Vector&, const Vector&, const Vector& xi, Matrix& J) {
        J << 0.0, -xi(0), xi(0), 0.0;
    };
    p.terminal_cost     = [](const Vector& x, const Vector&) { return x.squaredNorm(); };
    p.terminal_gradient = [](const Vector& x, const Vector&) -> Vector { return 2.0 * x; };
    p.initial_state     = [](const Vector& xi) {
        Vector x0(2);
        x0 << 1.0 + xi(3), xi(4);
        return x0;
    };
    return p;
}

ProblemDef make_vaccination(const VaccinationConfig& cfg)
{
    enum : int { S, E, I, N, Z };
    ProblemDef p;
    p.state_dim          = 5;
    p.control_dim        = 1;
    p.parameters         = vaccination_box(cfg);
    p.steps_per_interval = cfg.steps_per_interval;

    // xi = (a, b, c, d, e, g)
    p.drift = [](const Vector& x, const Vector& xi, Vector& f) {
        const double a = xi(0), b = xi(1), c = xi(2), d = xi(3), e = xi(4), g = xi(5);
        f(S) = b * x(N) - d * x(S) - c * x(S) * x(I);
        f(E) = c * x(S) * x(I) - (e + d) * x(E);
        f(I) = e * x(E) - (g + a + d) * x(I);
        f(N) = (b - d) * x(N) - a * x(I);
        f(Z) = x(I);
    };
    p.control_field = [](const Vector& x, const Vector&, Matrix& B) {
        B.setZero();
        B(S, 0) = -x(S);
    };
    p.state_jacobian = [](const Vector& x, const Vector& u, const Vector& xi, Matrix& J) {
        const double a = xi(0), b = xi(1), c = xi(2), d = xi(3), e = xi(4), g = xi(5);
        J.setZero();
        J(S, S) = -d - c * x(I) - u(0);
        J(S, I) = -c * x(S);
        J(S, N) = b;
        J(E, S) = c * x(I);
        J(E, E) = -(e + d);
        J(E, I) = c * x(S);
        J(I, E) = e;
        J(I, I) = -(g + a + d);
        J(N, I) = -a;
        J(N, N) = b - d;
        J(Z, I) = 1.0;
    };
    p.terminal_cost     = [](const Vector& x, const Vector&) { return x(Z); };
    p.terminal_gradient = [](const Vector&, const Vector&) -> Vector { return Vector::Unit(5, Z); };

    const double s0 = cfg.S0, e0 = cfg.E0, i0 = cfg.I0, n0 = cfg.N0();
    p.initial_state = [=](const Vector&) {
        Vector x0(5);
        x0 << s0, e0, i0, n0, 0.0;
        return x0;
    };
    return p;
}

BuiltinProblem oscillator_problem(const OscillatorConfig& cfg)
{
    return {"oscillator", make_oscillator(cfg),
            RegularizerSpec::uniform_box(cfg.alpha, 0.0, 2, -cfg.control_bound, cfg.control_bound),
            ControlGrid(cfg.t_final, cfg.intervals, 2)};
}

BuiltinProblem vaccination_problem(const VaccinationConfig& cfg)
{
    return {"vaccination", make_vaccination(cfg), RegularizerSpec::uniform_box(cfg.alpha, 0.0, 1, cfg.u_min, cfg.u_max),
            ControlGrid(cfg.t_final, cfg.intervals, 1)};
}

} // namespace saa
