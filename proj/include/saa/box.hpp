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
#ifndef SAA_BOX_HPP
#define SAA_BOX_HPP

#include <Eigen/Core>

#include <stdexcept>

namespace saa
{

/// Axis-aligned parameter box, the product of [lo_j, hi_j].
struct ParameterBox {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    ParameterBox() = default;
    ParameterBox(Eigen::VectorXd lower, Eigen::VectorXd upper)
        : lo(std::move(lower))
        , hi(std::move(upper))
    {
        if (lo.size() != hi.size()) {
            throw std::invalid_argument("ParameterBox: bound vectors differ in length");
        }
    }

    Eigen::Index dim() const
    {
        return lo.size();
    }

    bool empty() const
    {
        return (lo.array() > hi.array()).any();
    }

    template <typename Derived>
    bool contains(const Eigen::MatrixBase<Derived>& x) const
    {
        return x.size() == dim() && (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
    }

    Eigen::VectorXd midpoint() const
    {
        return 0.5 * (lo + hi);
    }
};

} // namespace saa

#endif // SAA_BOX_HPP
