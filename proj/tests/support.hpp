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
#ifndef SAA_TESTS_SUPPORT_HPP
#define SAA_TESTS_SUPPORT_HPP

#include "saa/dynamics.hpp"
#include "saa/ensemble.hpp"
#include "saa/regularizer.hpp"

#include <cmath>
#include <random>

namespace saa::testing
{

using Vector = ProblemDef::Vector;
using Matrix = ProblemDef::Matrix;

/// x' = 0, constant initial state, F = |x|^2. No parameters.
inline ProblemDef zero_field(int n, int m, Vector x0)
{
    ProblemDef p;
    p.state_dim      = n;
    p.control_dim    = m;
    p.parameters     = ParameterBox(Eigen::VectorXd(0), Eigen::VectorXd(0));
    p.drift          = [](const Vector&, const Vector&, Vector& f) { f.setZero(); };
    p.control_field  = [](const Vector&, const Vector&, Matrix& B) { B.setZero(); };
    p.state_jacobian = [](const Vector&, const Vector&, const Vector&, Matrix& J) { J.setZero(); };
    p.terminal_cost  = [](const Vector& x, const Vector&) { return x.squaredNorm(); };
    p.terminal_gradient = [](const Vector& x, const Vector&) -> Vector { return 2.0 * x; };
    p.initial_state  = [x0](const Vector&) { return x0; };
    return p;
}

/// Scalar x' = lambda x + u, x(0) = x0, F = x^2.
inline ProblemDef scalar_linear(double lambda, double x0)
{
    ProblemDef p;
    p.state_dim      = 1;
    p.control_dim    = 1;
    p.parameters     = ParameterBox(Eigen::VectorXd(0), Eigen::VectorXd(0));
    p.drift          = [lambda](const Vector& x, const Vector&, Vector& f) { f(0) = lambda * x(0); };
    p.control_field  = [](const Vector&, const Vector&, Matrix& B) { B(0, 0) = 1.0; };
    p.state_jacobian = [lambda](const Vector&, const Vector&, const Vector&, Matrix& J) { J(0, 0) = lambda; };
    p.terminal_cost  = [](const Vector& x, const Vector&) { return x(0) * x(0); };
    p.terminal_gradient = [](const Vector& x, const Vector&) -> Vector { return 2.0 * x; };
    p.initial_state  = [x0](const Vector&) { return Vector::Constant(1, x0); };
    return p;
}

/// x' = u, F = x^2: the integrator toy whose discretized SAA problem is a quadratic.
inline ProblemDef integrator_toy(double x0)
{
    return scalar_linear(0.0, x0);
}

/// Scalar x' = sin(x), no control.
inline ProblemDef sine_field(double x0)
{
    ProblemDef p   = scalar_linear(0.0, x0);
    p.drift        = [](const Vector& x, const Vector&, Vector& f) { f(0) = std::sin(x(0)); };
    p.control_field  = [](const Vector&, const Vector&, Matrix& B) { B.setZero(); };
    p.state_jacobian = [](const Vector& x, const Vector&, const Vector&, Matrix& J) { J(0, 0) = std::cos(x(0)); };
    return p;
}

/**
 * Random smooth nonlinear system with a state-dependent control matrix:
 *     f(x, u, xi) = A x + c .* sin(x) + diag(1 + 0.1 x) (B u) + xi_1 e,
 *     F(x) = 0.5 |x - target|^2 + sum(sin(x)).
 */
inline ProblemDef random_smooth(int n, int m, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix A(n, n), B(n, m);
    Vector c(n), target(n), x0(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            A(i, j) = 0.5 * g(rng);
        }
        for (int j = 0; j < m; ++j) {
            B(i, j) = g(rng);
        }
        c(i)      = 0.5 * g(rng);
        target(i) = g(rng);
        x0(i)     = g(rng);
    }
    ProblemDef p;
    p.state_dim   = n;
    p.control_dim = m;
    p.parameters  = ParameterBox(Eigen::VectorXd::Constant(1, -1.0), Eigen::VectorXd::Constant(1, 1.0));
    p.drift = [A, c](const Vector& x, const Vector& xi, Vector& f) {
        f.noalias() = A * x;
        f.array() += c.array() * x.array().sin() + xi(0);
    };
    p.control_field = [B](const Vector& x, const Vector&, Matrix& out) {
        out = (1.0 + 0.1 * x.array()).matrix().asDiagonal() * B;
    };
    p.state_jacobian = [A, B, c](const Vector& x, const Vector& u, const Vector&, Matrix& J) {
        J = A;
        J.diagonal().array() += c.array() * x.array().cos() + 0.1 * (B * u).array();
    };
    p.terminal_cost = [target](const Vector& x, const Vector&) {
        return 0.5 * (x - target).squaredNorm() + x.array().sin().sum();
    };
    p.terminal_gradient = [target](const Vector& x, const Vector&) -> Vector {
        return (x - target).array() + x.array().cos();
    };
    p.initial_state = [x0](const Vector&) { return x0; };
    return p;
}

/// Random control with entries uniform in [lo, hi].
inline Control random_control(const ControlGrid& grid, double lo, double hi, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(lo, hi);
    Control u(grid);
    for (Eigen::Index i = 0; i < u.values.size(); ++i) {
        u.values.data()[i] = d(rng);
    }
    return u;
}

/// Central finite-difference gradient of T with respect to each u_kj, divided by dt.
inline Control fd_gradient(const ProblemDef& p, const Control& u, const Vector& xi, double h)
{
    Control g(u.grid);
    for (int k = 0; k < u.grid.intervals; ++k) {
        for (int j = 0; j < u.grid.channels; ++j) {
            Control up = u, um = u;
            up.values(k, j) += h;
            um.values(k, j) -= h;
            g.values(k, j) = (eval_objective_sample(p, up, xi) - eval_objective_sample(p, um, xi)) / (2.0 * h) /
                             u.grid.step();
        }
    }
    return g;
}

inline double relative_error(const Control& a, const Control& reference)
{
    return distance(a, reference) / std::max(norm(reference), 1e-300);
}

} // namespace saa::testing

#endif // SAA_TESTS_SUPPORT_HPP
