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
#ifndef SAA_REGULARIZER_HPP
#define SAA_REGULARIZER_HPP

#include "saa/control.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace saa
{

/**
 * psi(u) = (alpha/2) ||u||^2 + beta ||u||_1 + indicator(lo <= u <= hi),
 * with per-channel bounds. psi_alpha is psi without the quadratic term.
 */
struct RegularizerSpec {
    double alpha = 1.0;
    double beta  = 0.0;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    RegularizerSpec() = default;
    RegularizerSpec(double a, double b, Eigen::VectorXd lower, Eigen::VectorXd upper)
        : alpha(a)
        , beta(b)
        , lo(std::move(lower))
        , hi(std::move(upper))
    {
        validate();
    }

    /// Same box [lower, upper] on each of `channels` inputs.
    static RegularizerSpec uniform_box(double a, double b, int channels, double lower, double upper)
    {
        return RegularizerSpec(a, b, Eigen::VectorXd::Constant(channels, lower),
                               Eigen::VectorXd::Constant(channels, upper));
    }

    void validate() const
    {
        if (!(alpha > 0.0)) {
            throw std::invalid_argument("regularizer: alpha must be > 0");
        }
        if (!(beta >= 0.0)) {
            throw std::invalid_argument("regularizer: beta must be >= 0");
        }
        if (lo.size() != hi.size() || lo.size() == 0) {
            throw std::invalid_argument("regularizer: box bounds must have matching, nonzero length");
        }
        if ((lo.array() > hi.array()).any()) {
            throw std::invalid_argument("regularizer: empty box (lo > hi)");
        }
    }

    int channels() const
    {
        return static_cast<int>(lo.size());
    }

    /// max_j max(|lo_j|, |hi_j|); infinite for unbounded boxes.
    double r_psi() const
    {
        return std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff());
    }
};

template <typename Scalar>
Scalar soft_threshold(Scalar v, Scalar t)
{
    if (v > t) {
        return v - t;
    }
    if (v < -t) {
        return v + t;
    }
    return Scalar(0);
}

template <typename Scalar>
bool in_box(const ControlT<Scalar>& u, const RegularizerSpec& spec)
{
    for (Eigen::Index j = 0; j < u.values.cols(); ++j) {
        for (Eigen::Index k = 0; k < u.values.rows(); ++k) {
            if (u.values(k, j) < Scalar(spec.lo(j)) || u.values(k, j) > Scalar(spec.hi(j))) {
                return false;
            }
        }
    }
    return true;
}

/// psi(u); +inf outside the box.
template <typename Scalar>
Scalar psi_value(const ControlT<Scalar>& u, const RegularizerSpec& spec)
{
    if (!in_box(u, spec)) {
        return std::numeric_limits<Scalar>::infinity();
    }
    return Scalar(spec.alpha / 2) * squared_norm(u) + Scalar(spec.beta) * l1_norm(u);
}

/// psi_alpha(u) = psi(u) - (alpha/2)||u||^2.
template <typename Scalar>
Scalar psi_alpha_value(const ControlT<Scalar>& u, const RegularizerSpec& spec)
{
    if (!in_box(u, spec)) {
        return std::numeric_limits<Scalar>::infinity();
    }
    return Scalar(spec.beta) * l1_norm(u);
}

/**
 * prox of gamma * psi_alpha, applied entrywise as clamp(shrink(v, gamma*beta), lo, hi).
 * The scalar subproblem is convex, so clamping the unconstrained minimizer is exact.
 * The dt weights are shared by every term and cancel.
 */
template <typename Scalar>
ControlT<Scalar> prox_psi_alpha(const ControlT<Scalar>& v, Scalar gamma, const RegularizerSpec& spec)
{
    if (!(gamma > Scalar(0))) {
        throw std::invalid_argument("prox_psi_alpha: gamma must be > 0");
    }
    if (v.grid.channels != spec.channels()) {
        throw std::invalid_argument("prox_psi_alpha: channel count mismatch");
    }
    const Scalar t = gamma * Scalar(spec.beta);
    ControlT<Scalar> out(v.grid);
    for (Eigen::Index j = 0; j < v.values.cols(); ++j) {
        const Scalar lo = Scalar(spec.lo(j));
        const Scalar hi = Scalar(spec.hi(j));
        for (Eigen::Index k = 0; k < v.values.rows(); ++k) {
            out.values(k, j) = std::clamp(soft_threshold(v.values(k, j), t), lo, hi);
        }
    }
    return out;
}

} // namespace saa

#endif // SAA_REGULARIZER_HPP
