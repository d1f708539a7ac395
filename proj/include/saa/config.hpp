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
#ifndef SAA_CONFIG_HPP
#define SAA_CONFIG_HPP

#include "saa/problems.hpp"
#include "saa/solver.hpp"
#include "saa/theory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace saa
{

/**
 * Everything a `saactl` run needs. Loaded from an INI file with sections
 * [problem], [regularizer], [discretization], [solver], [study] and [theory];
 * unknown sections or keys are rejected.
 */
struct StudyConfig {
    std::string problem = "oscillator";
    std::optional<double> t_final;
    std::optional<double> sigma;

    std::optional<double> alpha;
    double beta = 0.0;
    std::optional<double> lo;
    std::optional<double> hi;

    int intervals          = 50;
    int steps_per_interval = 1;

    SolverOptions solver;

    std::vector<int> n_grid{4, 8, 16, 32, 64, 128, 256};
    int replications = 50;
    int n_ref        = 4096;
    std::uint64_t seed = 1;
    int threads        = 1;
    std::string out_dir = "out";
    bool record_timing  = true;

    TheoryConstants theory;
    bool estimate_lipschitz = false;

    void validate() const;

    /// The selected problem with all overrides applied.
    BuiltinProblem build() const;

    /// Identifies the reference problem; cached reference solutions are reused only on a match.
    std::string reference_fingerprint() const;
};

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// `overrides` are "section.key=value" strings applied on top of the file.
StudyConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Defaults plus overrides, no file.
StudyConfig config_from_overrides(const std::vector<std::string>& overrides);

/// Parse INI text (for tests and embedded configs).
StudyConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

} // namespace saa

#endif // SAA_CONFIG_HPP
