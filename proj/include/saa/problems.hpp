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
#ifndef SAA_PROBLEMS_HPP
#define SAA_PROBLEMS_HPP

#include "saa/control.hpp"
#include "saa/dynamics.hpp"
#include "saa/regularizer.hpp"

#include <string>

namespace saa
{

/**
 * Randomly forced harmonic oscillator:
 *     x' = [0 -xi1; xi1 0] x + u + (xi2, xi3),  x(0) = (1 + xi4, xi5),
 * cost |x(t_f)|^2, |u_i| <= control_bound.
 */
struct OscillatorConfig {
    /// Not fixed by the original problem statement; always reported.
    double alpha         = 1.0;
    double control_bound = 3.0;
    double t_final       = 1.0;
    int intervals        = 50;
    int steps_per_interval = 1;
};

/**
 * SEIR model with vaccination rate u applied to susceptibles. The recovered
 * compartment is dropped (no other equation depends on it) and the state is
 * augmented with z' = I so that the integrated infections become the
 * terminal cost z(t_f). Parameters xi = (a, b, c, d, e, g).
 */
struct VaccinationConfig {
    double S0 = 1000.0;
    double E0 = 100.0;
    double I0 = 50.0;
    double R0 = 15.0;
    double t_final = 20.0;
    double alpha   = 2.0;
    double u_min   = 0.0;
    double u_max   = 0.9;
    Eigen::Matrix<double, 6, 1> nominal = (Eigen::Matrix<double, 6, 1>() << 0.2, 0.525, 0.001, 0.5, 0.5, 0.1).finished();
    double sigma   = 0.15;
    int intervals  = 50;
    int steps_per_interval = 1;

    double N0() const
    {
        return S0 + E0 + I0 + R0;
    }
};

ParameterBox oscillator_box();
ParameterBox vaccination_box(const VaccinationConfig& cfg);

ProblemDef make_oscillator(const OscillatorConfig& cfg = {});
ProblemDef make_vaccination(const VaccinationConfig& cfg = {});

/// A problem together with its control grid and regularizer.
struct BuiltinProblem {
    std::string name;
    ProblemDef problem;
    RegularizerSpec spec;
    ControlGrid grid;
};

BuiltinProblem oscillator_problem(const OscillatorConfig& cfg = {});
BuiltinProblem vaccination_problem(const VaccinationConfig& cfg = {});

} // namespace saa

#endif // SAA_PROBLEMS_HPP
