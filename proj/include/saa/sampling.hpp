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
#ifndef SAA_SAMPLING_HPP
#define SAA_SAMPLING_HPP

#include "saa/box.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace saa
{

enum class Generator { iid, sobol, nominal };

std::string to_string(Generator g);

struct SampleProvenance {
    Generator generator = Generator::iid;
    std::uint64_t seed  = 0;
    int count           = 0;
};

/// Ordered parameter samples; row i is the i-th point.
struct SampleSet {
    int dim = 0;
    Eigen::MatrixXd points;
    SampleProvenance provenance;

    int size() const
    {
        return static_cast<int>(points.rows());
    }
    Eigen::VectorXd point(int i) const
    {
        return points.row(i).transpose();
    }

    /// Concatenation; provenance of the result is that of `a` with the combined count.
    static SampleSet concat(const SampleSet& a, const SampleSet& b);
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic child seed for stream `index` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Independent uniform points on the box (mt19937_64 seeded from `seed`).
SampleSet sample_iid(const ParameterBox& box, int n, std::uint64_t seed);

/// Highest dimension covered by the built-in Sobol' direction numbers.
constexpr int sobol_max_dim = 8;

/**
 * First n points (starting at index 1) of the Sobol' sequence in Gray-code
 * order with Joe-Kuo direction numbers, mapped to the box. A nonzero seed
 * applies a random digital shift; seed 0 leaves the sequence unscrambled.
 */
SampleSet sample_sobol(const ParameterBox& box, int n, std::uint64_t seed);

/// Expected value of the uniform distribution on the box.
Eigen::VectorXd nominal_point(const ParameterBox& box);

/// The single-point set {nominal_point(box)}.
SampleSet nominal_set(const ParameterBox& box);

void write_csv(std::ostream& os, const SampleSet& samples);

} // namespace saa

#endif // SAA_SAMPLING_HPP
