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
#ifndef SAA_THEORY_HPP
#define SAA_THEORY_HPP

#include "saa/dynamics.hpp"
#include "saa/regularizer.hpp"

#include <cstdint>

namespace saa
{

/**
 * Constants entering the non-asymptotic SAA bounds. rho, the gradient
 * Lipschitz constant and the two variance terms have no closed form for
 * a given problem; they are user inputs (default 1) and every curve built
 * from them holds only up to those constants.
 */
struct TheoryConstants {
    double L_f    = 1.0; ///< dynamics Lipschitz constant, >= 1
    double L_F    = 1.0; ///< terminal cost Lipschitz constant, >= 1
    double V0     = 1.0; ///< bound on |x0(xi)|, >= 1
    double r_psi  = 1.0; ///< sup-norm radius of dom(psi), >= 1
    int m         = 1;
    double alpha  = 1.0;
    double rho    = 1.0; ///< covering-number constant
    double c0     = 1.0; ///< std. deviation of T(u0, xi)
    double c0_grad   = 1.0; ///< std. deviation of grad_u T(u0, xi) in L2
    double L_grad_T  = 1.0; ///< Lipschitz constant of u -> grad_u T(u, xi)

    void validate() const;

    /// sqrt(2) L_F L_f exp(L_f), the Lipschitz constant of u -> T(u, xi).
    double L_T() const;
};

struct GradientRadius {
    double R0;
    double R;
};

/// Radius of the ball in W^{1,inf} containing every sampled gradient grad_u T(u, xi).
GradientRadius radius_R(const TheoryConstants& tc);

/// Upper bound on log2 of the nu-covering number of the critical-point set.
double covering_bound_log2(int m, double R, double alpha, double nu, double rho);

/// Closed-form bound on int_0^{D/2} sqrt(ln(2 N(eps))) d eps when N(eps) <= 2^{c1/eps}.
double entropy_integral_bound(double c1, double D);

struct RateBoundInputs {
    double lipschitz = 1.0;
    double r_psi     = 1.0;
    double rho       = 1.0;
    double R         = 1.0;
    int m            = 1;
    double alpha     = 1.0;
    double c0        = 1.0;
};

/// c0/sqrt(N) + 16 sqrt(3) L r_psi / sqrt(N) * sqrt(1 + rho sqrt(m) R m / alpha).
double rate_bound(long N, const RateBoundInputs& in);

enum class RateKind { value, criticality };

/**
 * Mean error bound for SAA optimal values (RateKind::value, Lipschitz
 * constant L_T and variance c0) or for the criticality of SAA critical
 * points (RateKind::criticality, L_grad_T and c0_grad).
 */
double value_rate_bound(long N, const TheoryConstants& tc, RateKind kind = RateKind::value);

/// Sampled lower estimates of L_f, L_F and V0 for a problem (each clamped to >= 1).
struct LipschitzEstimate {
    double L_f = 1.0;
    double L_F = 1.0;
    double V0  = 1.0;
};

/**
 * Probes the problem at `samples` random (u, xi) with |u_j| <= 2 r_psi:
 * spectral norms of grad_x f and f1 along the RK4 trajectory, |f(0, 0, xi)|,
 * difference quotients of grad_x F between final states, and |x0(xi)|.
 * The maxima are empirical and can only under-estimate the true constants.
 */
LipschitzEstimate estimate_lipschitz(const ProblemDef& problem, const RegularizerSpec& spec, const ControlGrid& grid,
                                     int samples, std::uint64_t seed);

} // namespace saa

#endif // SAA_THEORY_HPP
