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
#include "saa/sampling.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <random>
#include <stdexcept>

namespace saa
{

std::string to_string(Generator g)
{
    switch (g) {
    case Generator::iid:
        return "iid";
    case Generator::sobol:
        return "sobol";
    case Generator::nominal:
        return "nominal";
    }
    return "unknown";
}

SampleSet SampleSet::concat(const SampleSet& a, const SampleSet& b)
{
    if (a.dim != b.dim) {
        throw std::invalid_argument("SampleSet::concat: dimension mismatch");
    }
    SampleSet out;
    out.dim = a.dim;
    out.points.resize(a.size() + b.size(), a.dim);
    out.points << a.points, b.points;
    out.provenance       = a.provenance;
    out.provenance.count = out.size();
    return out;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(seed ^ mix64(index ^ 0x632be59bd9b4e019ULL));
}

namespace
{

void check_box(const ParameterBox& box, int n)
{
    if (n < 1) {
        throw std::invalid_argument("sample count must be >= 1");
    }
    if (box.empty()) {
        throw std::invalid_argument("parameter box is empty");
    }
}

double unit_double(std::uint64_t bits)
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double to_box(double unit, double lo, double hi)
{
    return std::min(hi, lo + (hi - lo) * unit);
}

// Joe & Kuo (2008) primitive polynomials and initial direction numbers for
// dimensions 2..8; dimension 1 is the van der Corput sequence.
struct DirectionSeed {
    int degree;
    unsigned coeffs;
    std::array<unsigned, 5> m;
};

constexpr std::array<DirectionSeed, sobol_max_dim - 1> direction_seeds{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
}};

constexpr int sobol_bits = 32;

std::array<std::uint32_t, sobol_bits> direction_numbers(int dim)
{
    std::array<std::uint32_t, sobol_bits> v{};
    if (dim == 0) {
        for (int k = 0; k < sobol_bits; ++k) {
            v[k] = std::uint32_t{1} << (sobol_bits - 1 - k);
        }
        return v;
    }
    const auto& ds = direction_seeds[dim - 1];
    const int s    = ds.degree;
    for (int k = 0; k < s; ++k) {
        v[k] = ds.m[k] << (sobol_bits - 1 - k);
    }
    for (int k = s; k < sobol_bits; ++k) {
        std::uint32_t x = v[k - s] ^ (v[k - s] >> s);
        for (int i = 1; i < s; ++i) {
            if ((ds.coeffs >> (s - 1 - i)) & 1u) {
                x ^= v[k - i];
            }
        }
        v[k] = x;
    }
    return v;
}

} // namespace

SampleSet sample_iid(const ParameterBox& box, int n, std::uint64_t seed)
{
    check_box(box, n);
    const auto d = static_cast<int>(box.dim());
    SampleSet out;
    out.dim        = d;
    out.provenance = {Generator::iid, seed, n};
    out.points.resize(n, d);

    std::mt19937_64 rng(mix64(seed));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            out.points(i, j) = to_box(unit_double(rng()), box.lo(j), box.hi(j));
        }
    }
    return out;
}

SampleSet sample_sobol(const ParameterBox& box, int n, std::uint64_t seed)
{
    check_box(box, n);
    const auto d = static_cast<int>(box.dim());
    if (d > sobol_max_dim) {
        throw std::invalid_argument("sample_sobol: dimension " + std::to_string(d) + " exceeds the supported " +
                                    std::to_string(sobol_max_dim));
    }
    SampleSet out;
    out.dim        = d;
    out.provenance = {Generator::sobol, seed, n};
    out.points.resize(n, d);

    std::vector<std::array<std::uint32_t, sobol_bits>> v;
    std::vector<std::uint32_t> shift(d, 0);
    std::mt19937_64 rng(mix64(seed));
    for (int j = 0; j < d; ++j) {
        v.push_back(direction_numbers(j));
        if (seed != 0) {
            shift[j] = static_cast<std::uint32_t>(rng() >> 32);
        }
    }

    std::vector<std::uint32_t> x(d, 0);
    for (std::uint64_t idx = 1; idx <= static_cast<std::uint64_t>(n); ++idx) {
        // Gray-code update: flip the direction number at the lowest zero bit of idx - 1.
        int c = 0;
        for (std::uint64_t b = idx - 1; b & 1u; b >>= 1) {
            ++c;
        }
        if (c >= sobol_bits) {
            throw std::invalid_argument("sample_sobol: sequence exhausted");
        }
        for (int j = 0; j < d; ++j) {
            x[j] ^= v[j][c];
            const double unit = static_cast<double>(x[j] ^ shift[j]) * 0x1.0p-32;
            out.points(static_cast<Eigen::Index>(idx - 1), j) = to_box(unit, box.lo(j), box.hi(j));
        }
    }
    return out;
}

Eigen::VectorXd nominal_point(const ParameterBox& box)
{
    return box.midpoint();
}

SampleSet nominal_set(const ParameterBox& box)
{
    SampleSet out;
    out.dim        = static_cast<int>(box.dim());
    out.points     = nominal_point(box).transpose();
    out.provenance = {Generator::nominal, 0, 1};
    return out;
}

void write_csv(std::ostream& os, const SampleSet& samples)
{
    os << "# generator=" << to_string(samples.provenance.generator) << " seed=" << samples.provenance.seed
       << " n=" << samples.provenance.count << '\n';
    for (int j = 0; j < samples.dim; ++j) {
        os << (j ? "," : "") << "xi" << j + 1;
    }
    os << '\n';
    const auto old = os.precision(17);
    for (int i = 0; i < samples.size(); ++i) {
        for (int j = 0; j < samples.dim; ++j) {
            os << (j ? "," : "") << samples.points(i, j);
        }
        os << '\n';
    }
    os.precision(old);
}

} // namespace saa
