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
#ifndef SAA_CONTROL_HPP
#define SAA_CONTROL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace saa
{

/// Uniform partition of [0, t_final] into `intervals` pieces, with `channels` control inputs.
struct ControlGrid {
    double t_final  = 1.0;
    int intervals   = 50;
    int channels    = 1;

    ControlGrid() = default;
    ControlGrid(double tf, int q, int m)
        : t_final(tf)
        , intervals(q)
        , channels(m)
    {
        if (!(tf > 0.0) || q < 1 || m < 1) {
            throw std::invalid_argument("ControlGrid: need t_final > 0, q >= 1, m >= 1");
        }
    }

    double step() const
    {
        return t_final / intervals;
    }

    bool operator==(const ControlGrid&) const = default;
};

/**
 * Piecewise-constant control. Row k holds the value on the k-th interval,
 * column j the j-th channel. Norms and inner products are the L2(0, t_f)
 * ones of the piecewise-constant function, i.e. Euclidean ones weighted by dt.
 */
template <typename Scalar = double>
struct ControlT {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    ControlGrid grid;
    Matrix values;

    ControlT() = default;
    explicit ControlT(const ControlGrid& g)
        : grid(g)
        , values(Matrix::Zero(g.intervals, g.channels))
    {
    }
    ControlT(const ControlGrid& g, Matrix v)
        : grid(g)
        , values(std::move(v))
    {
        if (values.rows() != g.intervals || values.cols() != g.channels) {
            throw std::invalid_argument("Control: value matrix shape does not match the grid");
        }
    }

    static ControlT constant(const ControlGrid& g, Scalar c)
    {
        return ControlT(g, Matrix::Constant(g.intervals, g.channels, c));
    }

    bool all_finite() const
    {
        return values.allFinite();
    }
};

using Control = ControlT<double>;

template <typename Scalar>
Scalar inner(const ControlT<Scalar>& a, const ControlT<Scalar>& b)
{
    return Scalar(a.grid.step()) * (a.values.array() * b.values.array()).sum();
}

template <typename Scalar>
Scalar squared_norm(const ControlT<Scalar>& u)
{
    return Scalar(u.grid.step()) * u.values.squaredNorm();
}

template <typename Scalar>
Scalar norm(const ControlT<Scalar>& u)
{
    using std::sqrt;
    return sqrt(squared_norm(u));
}

/// Weighted L1 norm, dt * sum |u_kj|.
template <typename Scalar>
Scalar l1_norm(const ControlT<Scalar>& u)
{
    return Scalar(u.grid.step()) * u.values.cwiseAbs().sum();
}

template <typename Scalar>
Scalar distance(const ControlT<Scalar>& a, const ControlT<Scalar>& b)
{
    using std::sqrt;
    return sqrt(Scalar(a.grid.step()) * (a.values - b.values).squaredNorm());
}

} // namespace saa

#endif // SAA_CONTROL_HPP
