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
#include "doctest.h"
#include "support.hpp"

#include "saa/regularizer.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace saa;
using namespace saa::testing;

namespace
{

// argmin over a uniform grid of step 1e-4 on [lo, hi] of 0.5 (x - v)^2 + t |x|.
double brute_force_prox(double v, double t, double lo, double hi)
{
    const double step = 1e-4;
    const auto count  = static_cast<long>(std::floor((hi - lo) / step));
    double best_x = lo, best = std::numeric_limits<double>::infinity();
    for (long i = 0; i <= count + 1; ++i) {
        const double x   = std::min(hi, lo + i * step);
        const double val = 0.5 * (x - v) * (x - v) + t * std::abs(x);
        if (val < best) {
            best   = val;
            best_x = x;
        }
    }
    return best_x;
}

Control scalar_control(double v)
{
    return Control::constant(ControlGrid(1.0, 1, 1), v);
}

} // namespace

TEST_CASE("psi_value examples")
{
    const auto spec = RegularizerSpec::uniform_box(2.0, 0.0, 1, -3.0, 3.0);
    CHECK(psi_value(Control(ControlGrid(1.0, 7, 1)), spec) == 0.0);
    CHECK(psi_value(Control::constant(ControlGrid(1.0, 13, 1), 1.0), spec) == doctest::Approx(1.0));

    Control u(ControlGrid(1.0, 5, 1));
    u.values(2, 0) = 3.5;
    CHECK(std::isinf(psi_value(u, spec)));

    const auto l1 = RegularizerSpec::uniform_box(1.0, 0.5, 1, -3.0, 3.0);
    CHECK(psi_value(Control::constant(ControlGrid(2.0, 4, 1), -1.0), l1) == doctest::Approx(0.5 * 2.0 + 0.5 * 2.0));
}

TEST_CASE("prox examples")
{
    const auto box3 = RegularizerSpec::uniform_box(1.0, 0.0, 1, -3.0, 3.0);
    CHECK(prox_psi_alpha(scalar_control(5.0), 1.0, box3).values(0, 0) == 3.0);

    // gamma * beta = 0.5
    const auto spec = RegularizerSpec::uniform_box(1.0, 0.25, 1, -1.0, 1.0);
    CHECK(prox_psi_alpha(scalar_control(0.8), 2.0, spec).values(0, 0) == doctest::Approx(0.3));
    CHECK(prox_psi_alpha(scalar_control(2.0), 2.0, spec).values(0, 0) == 1.0);
    CHECK(prox_psi_alpha(scalar_control(-0.4), 2.0, spec).values(0, 0) == 0.0);

    // box not containing 0
    const auto vacc = RegularizerSpec::uniform_box(2.0, 0.3, 1, 0.0, 0.9);
    CHECK(prox_psi_alpha(scalar_control(-2.0), 1.0, vacc).values(0, 0) == 0.0);
    CHECK(prox_psi_alpha(scalar_control(0.5), 1.0, vacc).values(0, 0) == doctest::Approx(0.2));
}

TEST_CASE("prox matches brute-force scalar minimization")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double lo    = -3.0 * U(rng);
        const double hi    = lo + 0.01 + 3.0 * U(rng);
        const double beta  = 2.0 * U(rng);
        const double gamma = 0.05 + 2.0 * U(rng);
        const double v     = -6.0 + 12.0 * U(rng);
        const auto spec    = RegularizerSpec::uniform_box(1.0, beta, 1, lo, hi);
        const double p     = prox_psi_alpha(scalar_control(v), gamma, spec).values(0, 0);
        CHECK(std::abs(p - brute_force_prox(v, gamma * beta, lo, hi)) <= 1e-4);
    }
}

TEST_CASE("prox is nonexpansive")
{
    std::mt19937_64 rng(78);
    const ControlGrid grid(3.0, 17, 2);
    const RegularizerSpec spec(1.0, 0.7, (Eigen::VectorXd(2) << -1.0, 0.0).finished(),
                               (Eigen::VectorXd(2) << 2.0, 0.9).finished());
    for (int trial = 0; trial < 100; ++trial) {
        const Control a = random_control(grid, -4.0, 4.0, rng);
        const Control b = random_control(grid, -4.0, 4.0, rng);
        CHECK(distance(prox_psi_alpha(a, 0.8, spec), prox_psi_alpha(b, 0.8, spec)) <= distance(a, b) + 1e-12);
    }
}

TEST_CASE("prox output satisfies the subgradient optimality condition entrywise")
{
    // 0 in (p - v) + gamma beta d|p| + N_[lo,hi](p)
    std::mt19937_64 rng(79);
    const ControlGrid grid(1.0, 200, 1);
    const double gamma = 0.6;
    const auto spec    = RegularizerSpec::uniform_box(1.0, 0.5, 1, -1.0, 2.0);
    const double t     = gamma * spec.beta;
    const Control v    = random_control(grid, -4.0, 4.0, rng);
    const Control p    = prox_psi_alpha(v, gamma, spec);
    for (int k = 0; k < grid.intervals; ++k) {
        const double pk = p.values(k, 0), r = v.values(k, 0) - pk; // r must lie in t d|pk| + N(pk)
        // Interval of admissible r values: subdifferential of t|.| plus the normal cone.
        double rlo = pk > 0 ? t : -t;
        double rhi = pk < 0 ? -t : t;
        if (pk == spec.lo(0)) {
            rlo = -std::numeric_limits<double>::infinity();
        }
        if (pk == spec.hi(0)) {
            rhi = std::numeric_limits<double>::infinity();
        }
        CHECK(r >= rlo - 1e-12);
        CHECK(r <= rhi + 1e-12);
    }
}

TEST_CASE("prox does not depend on the grid spacing")
{
    std::mt19937_64 rng(80);
    const auto spec  = RegularizerSpec::uniform_box(1.0, 0.4, 1, -1.0, 1.0);
    const Control a  = random_control(ControlGrid(1.0, 10, 1), -3.0, 3.0, rng);
    const Control b(ControlGrid(7.0, 10, 1), a.values);
    CHECK(prox_psi_alpha(a, 0.9, spec).values == prox_psi_alpha(b, 0.9, spec).values);
}

TEST_CASE("psi is finite at every prox output")
{
    std::mt19937_64 rng(81);
    const auto spec = RegularizerSpec::uniform_box(1.0, 0.1, 2, 0.0, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const Control v = random_control(ControlGrid(1.0, 8, 2), -1e6, 1e6, rng);
        CHECK(std::isfinite(psi_value(prox_psi_alpha(v, 3.0, spec), spec)));
    }
}

TEST_CASE("unbounded boxes and invalid specs")
{
    const double inf = std::numeric_limits<double>::infinity();
    const auto free  = RegularizerSpec::uniform_box(1.0, 0.0, 1, -inf, inf);
    CHECK(prox_psi_alpha(scalar_control(1e8), 1.0, free).values(0, 0) == 1e8);
    CHECK(std::isinf(free.r_psi()));
    CHECK(RegularizerSpec::uniform_box(1.0, 0.0, 2, 0.0, 0.9).r_psi() == 0.9);

    CHECK_THROWS_AS(RegularizerSpec::uniform_box(0.0, 0.0, 1, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RegularizerSpec::uniform_box(1.0, -1.0, 1, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RegularizerSpec::uniform_box(1.0, 0.0, 1, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(prox_psi_alpha(scalar_control(0.0), 0.0, free), std::invalid_argument);
}
