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
#ifndef SAA_STUDY_HPP
#define SAA_STUDY_HPP

#include "saa/config.hpp"
#include "saa/sampling.hpp"
#include "saa/solver.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace saa
{

/// One SAA solve inside a convergence study.
struct StudyRecord {
    int N        = 0;
    int rep      = 0;
    std::uint64_t seed = 0;
    double v_hat     = 0.0;
    double value_err = 0.0; ///< |v_hat - v_ref|
    double crit_ref  = 0.0; ///< reference criticality at the SAA solution
    int iters        = 0;
    double wall_ms   = 0.0;
    std::string status = "ok"; ///< ok | nonconverged | failed
};

struct SummaryRow {
    int N = 0;
    double mean_value_err = 0.0;
    double se_value_err   = 0.0;
    double mean_crit      = 0.0;
    double se_crit        = 0.0;
    int n_ok              = 0; ///< replications that entered the means
};

struct RateFit {
    double slope     = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares of log(mean) on log(N).
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct StudyAnalysis {
    std::vector<SummaryRow> summary;
    RateFit value_fit;
    RateFit crit_fit;
    bool complete = true;
};

/// Per-N means and standard errors over the rows with status "ok", plus the two rate fits.
StudyAnalysis analyze(const std::vector<StudyRecord>& records);

struct ReferenceSolution {
    SolveReport report;
    SampleSet samples;
    std::string fingerprint;
};

/// Seed of replication `rep` at sample size N.
std::uint64_t replication_seed(std::uint64_t master, int N, int rep);

/// Scrambling seed of the reference Sobol' set.
std::uint64_t reference_seed(std::uint64_t master);

/// Solve with the single nominal parameter E[xi].
SolveReport run_nominal(const StudyConfig& cfg);

/// Solve the reference problem on N_ref scrambled Sobol' points.
ReferenceSolution run_reference(const StudyConfig& cfg);

/// Reuse <out>/reference.json when its fingerprint matches, else solve and persist.
ReferenceSolution load_or_run_reference(const StudyConfig& cfg);

void save_reference(const ReferenceSolution& ref, const std::string& dir);

struct StudyResult {
    std::vector<StudyRecord> records;
    StudyAnalysis analysis;
    double v_ref = 0.0;
};

/// All (N, replication) solves for the configured grid, records sorted by (N, rep).
StudyResult run_study(const StudyConfig& cfg, const ReferenceSolution& ref);

/// Writes summary.csv, fits.csv and rates.svg into `dir`.
void write_analysis_outputs(const StudyAnalysis& analysis, const std::string& title, const std::string& dir);

/// Writes records.csv, summary.csv, fits.csv, bounds.csv and rates.svg into `dir`.
void write_study_outputs(const StudyConfig& cfg, const StudyResult& result, const std::string& dir);

/// (N, value-rate bound, criticality-rate bound) rows for the configured N grid.
std::vector<std::vector<double>> bound_rows(const StudyConfig& cfg);

/// Theory constants from the config, with r_psi, m, alpha taken from the problem
/// and optionally L_f, L_F, V0 replaced by sampled estimates.
TheoryConstants theory_constants(const StudyConfig& cfg);

} // namespace saa

#endif // SAA_STUDY_HPP
