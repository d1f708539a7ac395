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
#ifndef SAA_DYNAMICS_HPP
#define SAA_DYNAMICS_HPP

#include "saa/box.hpp"
#include "saa/control.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace saa
{

/// Thrown when the forward sweep produces a non-finite state.
class IntegrationDiverged : public std::runtime_error
{
public:
    IntegrationDiverged(int node, int sample = -1)
        : std::runtime_error(message(node, sample))
        , node_(node)
        , sample_(sample)
    {
    }

    int node() const
    {
        return node_;
    }
    /// Index of the offending sample inside an ensemble, -1 if not known.
    int sample() const
    {
        return sample_;
    }

private:
    static std::string message(int node, int sample)
    {
        std::string s = "integration diverged: non-finite state at RK4 node " + std::to_string(node);
        if (sample >= 0) {
            s += " (sample " + std::to_string(sample) + ")";
        }
        return s;
    }

    int node_;
    int sample_;
};

/**
 * Parameterized affine-control system
 *
 *     x' = f0(x, xi) + f1(x, xi) u,   x(0) = x0(xi),
 *
 * with terminal cost F(x(t_f), xi). Running costs are expressed by augmenting
 * the state. The vector-field callbacks write into preallocated outputs of the
 * right size; `state_jacobian(x, u, xi, J)` is the Jacobian of f0 + f1 u with
 * respect to x and must be consistent with `drift` and `control_field`.
 */
template <typename Scalar = double>
struct ProblemDefT {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    int state_dim   = 0;
    int control_dim = 0;
    ParameterBox parameters;
    int steps_per_interval = 1;

    std::function<void(const Vector& x, const Vector& xi, Vector& f0)> drift;
    std::function<void(const Vector& x, const Vector& xi, Matrix& f1)> control_field;
    std::function<void(const Vector& x, const Vector& u, const Vector& xi, Matrix& jac)> state_jacobian;
    std::function<Scalar(const Vector& x, const Vector& xi)> terminal_cost;
    std::function<Vector(const Vector& x, const Vector& xi)> terminal_gradient;
    std::function<Vector(const Vector& xi)> initial_state;

    Vector rhs(const Vector& x, const Vector& u, const Vector& xi) const
    {
        Vector f(state_dim);
        Matrix B(state_dim, control_dim);
        drift(x, xi, f);
        control_field(x, xi, B);
        return f + B * u;
    }

    Matrix jacobian(const Vector& x, const Vector& u, const Vector& xi) const
    {
        Matrix J(state_dim, state_dim);
        state_jacobian(x, u, xi, J);
        return J;
    }

    Matrix control_matrix(const Vector& x, const Vector& xi) const
    {
        Matrix B(state_dim, control_dim);
        control_field(x, xi, B);
        return B;
    }
};

using ProblemDef = ProblemDefT<double>;

/// States at every RK4 node, one row per node: (q*s + 1) x n.
template <typename Scalar = double>
struct StateTrajectoryT {
    ControlGrid grid;
    int steps_per_interval = 1;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> states;

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> final_state() const
    {
        return states.row(states.rows() - 1).transpose();
    }
};

/// Discrete costates at every RK4 node; the last row is grad_x F at the final state.
template <typename Scalar = double>
struct AdjointTrajectoryT {
    ControlGrid grid;
    int steps_per_interval = 1;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> costates;
};

using StateTrajectory   = StateTrajectoryT<double>;
using AdjointTrajectory = AdjointTrajectoryT<double>;

template <typename Scalar>
struct SampleEvaluationT {
    Scalar value;
    ControlT<Scalar> gradient;
};

using SampleEvaluation = SampleEvaluationT<double>;

namespace detail
{

template <typename Scalar, typename Vector>
void check_inputs(const ProblemDefT<Scalar>& problem, const ControlT<Scalar>& u, const Vector& xi)
{
    if (u.grid.channels != problem.control_dim) {
        throw std::invalid_argument("control has " + std::to_string(u.grid.channels) + " channels, problem expects " +
                                    std::to_string(problem.control_dim));
    }
    if (problem.steps_per_interval < 1) {
        throw std::invalid_argument("steps_per_interval must be >= 1");
    }
    Eigen::VectorXd xid = xi.template cast<double>();
    if (!problem.parameters.contains(xid)) {
        throw std::invalid_argument("parameter vector outside the parameter box");
    }
}

template <typename Scalar>
struct Workspace {
    using Vector = typename ProblemDefT<Scalar>::Vector;
    using Matrix = typename ProblemDefT<Scalar>::Matrix;

    Vector x, uk, y, k1, k2, k3, k4, lambda, kb, yb, gk;
    Matrix B, J;

    Workspace(int n, int m)
        : x(n), uk(m), y(n), k1(n), k2(n), k3(n), k4(n), lambda(n), kb(n), yb(n), gk(m), B(n, m), J(n, n)
    {
    }

    // out = f0(y) + f1(y) uk; leaves f1(y) in B.
    void rhs(const ProblemDefT<Scalar>& p, const Vector& state, const Vector& xi, Vector& out)
    {
        p.drift(state, xi, out);
        p.control_field(state, xi, B);
        out.noalias() += B * uk;
    }
};

} // namespace detail

/**
 * Classic RK4 with step dt/s on every control interval, control frozen per
 * interval. Returns the state at all q*s + 1 nodes.
 */
template <typename Scalar>
StateTrajectoryT<Scalar> integrate_forward(const ProblemDefT<Scalar>& problem, const ControlT<Scalar>& u,
                                           const typename ProblemDefT<Scalar>::Vector& xi)
{
    detail::check_inputs(problem, u, xi);

    const int s     = problem.steps_per_interval;
    const int q     = u.grid.intervals;
    const Scalar h  = Scalar(u.grid.step()) / Scalar(s);
    const Scalar h2 = h / Scalar(2);

    StateTrajectoryT<Scalar> traj;
    traj.grid               = u.grid;
    traj.steps_per_interval = s;
    traj.states.resize(q * s + 1, problem.state_dim);

    detail::Workspace<Scalar> w(problem.state_dim, problem.control_dim);
    w.x = problem.initial_state(xi);
    if (w.x.size() != problem.state_dim) {
        throw std::invalid_argument("initial_state returned a vector of the wrong size");
    }
    if (!w.x.allFinite()) {
        throw IntegrationDiverged(0);
    }
    traj.states.row(0) = w.x.transpose();

    int node = 0;
    for (int k = 0; k < q; ++k) {
        w.uk = u.values.row(k).transpose();
        for (int j = 0; j < s; ++j) {
            w.rhs(problem, w.x, xi, w.k1);
            w.y = w.x + h2 * w.k1;
            w.rhs(problem, w.y, xi, w.k2);
            w.y = w.x + h2 * w.k2;
            w.rhs(problem, w.y, xi, w.k3);
            w.y = w.x + h * w.k3;
            w.rhs(problem, w.y, xi, w.k4);
            w.x += (h / Scalar(6)) * (w.k1 + Scalar(2) * w.k2 + Scalar(2) * w.k3 + w.k4);
            ++node;
            if (!w.x.allFinite()) {
                throw IntegrationDiverged(node);
            }
            traj.states.row(node) = w.x.transpose();
        }
    }
    return traj;
}

template <typename Scalar>
Scalar eval_objective_sample(const ProblemDefT<Scalar>& problem, const ControlT<Scalar>& u,
                             const typename ProblemDefT<Scalar>::Vector& xi)
{
    const auto traj = integrate_forward(problem, u, xi);
    return problem.terminal_cost(traj.final_state(), xi);
}

/**
 * Reverse sweep through the RK4 steps of `traj` (the discrete adjoint).
 * Writes the costate at every node into `adjoint` when non-null and returns
 * the gradient of F(x_final) in the weighted L2 sense: the partial derivative
 * with respect to u_kj divided by dt.
 */
template <typename Scalar>
ControlT<Scalar> adjoint_sweep(const ProblemDefT<Scalar>& problem, const ControlT<Scalar>& u,
                               const typename ProblemDefT<Scalar>::Vector& xi, const StateTrajectoryT<Scalar>& traj,
                               AdjointTrajectoryT<Scalar>* adjoint = nullptr)
{
    const int s     = traj.steps_per_interval;
    const int q     = u.grid.intervals;
    const Scalar h  = Scalar(u.grid.step()) / Scalar(s);
    const Scalar h2 = h / Scalar(2);
    const Scalar w1 = h / Scalar(6);
    const Scalar w2 = h / Scalar(3);

    detail::Workspace<Scalar> w(problem.state_dim, problem.control_dim);
    auto& lambda = w.lambda;
    // Stage inputs y1..y4 of the step being reversed.
    typename ProblemDefT<Scalar>::Matrix stages(problem.state_dim, 4);

    ControlT<Scalar> grad(u.grid);
    lambda = problem.terminal_gradient(traj.final_state(), xi);
    if (adjoint) {
        adjoint->grid               = u.grid;
        adjoint->steps_per_interval = s;
        adjoint->costates.resize(q * s + 1, problem.state_dim);
        adjoint->costates.row(q * s) = lambda.transpose();
    }

    // Adds the pullback of stage cotangent kb through stage input y: yb = J(y)^T kb, gk += f1(y)^T kb.
    auto pull = [&](int stage) {
        w.y = stages.col(stage);
        problem.state_jacobian(w.y, w.uk, xi, w.J);
        problem.control_field(w.y, xi, w.B);
        w.yb.noalias() = w.J.transpose() * w.kb;
        w.gk.noalias() += w.B.transpose() * w.kb;
    };

    for (int k = q - 1; k >= 0; --k) {
        w.uk = u.values.row(k).transpose();
        w.gk.setZero();
        for (int j = s - 1; j >= 0; --j) {
            const int node = k * s + j;
            w.x            = traj.states.row(node).transpose();

            stages.col(0) = w.x;
            w.rhs(problem, w.x, xi, w.k1);
            stages.col(1) = w.x + h2 * w.k1;
            w.y           = stages.col(1);
            w.rhs(problem, w.y, xi, w.k2);
            stages.col(2) = w.x + h2 * w.k2;
            w.y           = stages.col(2);
            w.rhs(problem, w.y, xi, w.k3);
            stages.col(3) = w.x + h * w.k3;

            // w.x now accumulates the costate at the start of the step.
            w.x = lambda;
            w.kb = w1 * lambda;
            pull(3);
            w.x += w.yb;
            w.kb = w2 * lambda + h * w.yb;
            pull(2);
            w.x += w.yb;
            w.kb = w2 * lambda + h2 * w.yb;
            pull(1);
            w.x += w.yb;
            w.kb = w1 * lambda + h2 * w.yb;
            pull(0);
            w.x += w.yb;
            lambda = w.x;

            if (adjoint) {
                adjoint->costates.row(node) = lambda.transpose();
            }
        }
        grad.values.row(k) = w.gk.transpose() / Scalar(u.grid.step());
    }
    return grad;
}

template <typename Scalar>
SampleEvaluationT<Scalar> value_and_gradient_sample(const ProblemDefT<Scalar>& problem, const ControlT<Scalar>& u,
                                                    const typename ProblemDefT<Scalar>::Vector& xi)
{
    const auto traj = integrate_forward(problem, u, xi);
    return {problem.terminal_cost(traj.final_state(), xi), adjoint_sweep(problem, u, xi, traj)};
}

/// Gradient of eval_objective_sample with respect to u in the weighted L2 inner product.
template <typename Scalar>
ControlT<Scalar> gradient_sample(const ProblemDefT<Scalar>& problem, const ControlT<Scalar>& u,
                                 const typename ProblemDefT<Scalar>::Vector& xi)
{
    const auto traj = integrate_forward(problem, u, xi);
    return adjoint_sweep(problem, u, xi, traj);
}

} // namespace saa

#endif // SAA_DYNAMICS_HPP
