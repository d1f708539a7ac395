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
#include "saa/study.hpp"
#include "saa/csv.hpp"
#include "saa/parallel.hpp"
#include "saa/svg.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace saa
{

namespace fs = std::filesystem;
using nlohmann::json;

RateFit fit_rate(const std::vector<std::pair<double, double>>& points)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [n, mean] = points[i];
        if (!(n > 0.0) || !(mean > 0.0) || !std::isfinite(mean)) {
            throw std::invalid_argument("fit_rate: row " + std::to_string(i) + " (N=" + format_double(n) +
                                        ", mean=" + format_double(mean) + ") is not positive");
        }
        xs.push_back(std::log(n));
        ys.push_back(std::log(mean));
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fit_rate: need at least two points");
    }
    const auto k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_rate: need at least two distinct N");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

namespace
{

std::pair<double, double> mean_and_se(const std::vector<double>& v)
{
    if (v.empty()) {
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= double(v.size());
    if (v.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / double(v.size() - 1)) / std::sqrt(double(v.size()))};
}

} // namespace

StudyAnalysis analyze(const std::vector<StudyRecord>& records)
{
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_n;
    StudyAnalysis out;
    for (const auto& r : records) {
        auto& cell = by_n[r.N];
        if (r.status != "ok") {
            out.complete = false;
        }
        if (r.status == "failed") {
            continue;
        }
        cell.first.push_back(r.value_err);
        cell.second.push_back(r.crit_ref);
    }
    std::vector<std::pair<double, double>> value_pts, crit_pts;
    for (const auto& [n, cell] : by_n) {
        SummaryRow row;
        row.N                                 = n;
        row.n_ok                              = static_cast<int>(cell.first.size());
        std::tie(row.mean_value_err, row.se_value_err) = mean_and_se(cell.first);
        std::tie(row.mean_crit, row.se_crit)  = mean_and_se(cell.second);
        out.summary.push_back(row);
        if (row.n_ok > 0) {
            value_pts.emplace_back(n, row.mean_value_err);
            crit_pts.emplace_back(n, row.mean_crit);
        }
    }
    out.value_fit = fit_rate(value_pts);
    out.crit_fit  = fit_rate(crit_pts);
    return out;
}

std::uint64_t replication_seed(std::uint64_t master, int N, int rep)
{
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(N)), static_cast<std::uint64_t>(rep));
}

std::uint64_t reference_seed(std::uint64_t master)
{
    const std::uint64_t s = derive_seed(master, 0xffffffffffffffffULL);
    return s == 0 ? 1 : s;
}

SolveReport run_nominal(const StudyConfig& cfg)
{
    const BuiltinProblem bp = cfg.build();
    EnsembleProblem ep(bp.problem, bp.spec, nominal_set(bp.problem.parameters), 1);
    return solve(ep, Control(bp.grid), cfg.solver);
}

ReferenceSolution run_reference(const StudyConfig& cfg)
{
    const BuiltinProblem bp = cfg.build();
    ReferenceSolution ref;
    ref.samples     = sample_sobol(bp.problem.parameters, cfg.n_ref, reference_seed(cfg.seed));
    ref.fingerprint = cfg.reference_fingerprint();
    EnsembleProblem ep(bp.problem, bp.spec, ref.samples, cfg.threads);
    ref.report = solve(ep, Control(bp.grid), cfg.solver);
    return ref;
}

void save_reference(const ReferenceSolution& ref, const std::string& dir)
{
    fs::create_directories(dir);
    const Control& u = ref.report.u_star;
    json j;
    j["fingerprint"]  = ref.fingerprint;
    j["v_ref"]        = ref.report.value;
    j["criticality"]  = ref.report.criticality;
    j["iterations"]   = ref.report.iterations;
    j["converged"]    = ref.report.converged;
    j["provenance"]   = {{"generator", to_string(ref.samples.provenance.generator)},
                         {"seed", ref.samples.provenance.seed},
                         {"n", ref.samples.provenance.count}};
    j["grid"]         = {{"t_final", u.grid.t_final}, {"q", u.grid.intervals}, {"m", u.grid.channels}};
    json rows         = json::array();
    for (int k = 0; k < u.grid.intervals; ++k) {
        json row = json::array();
        for (int c = 0; c < u.grid.channels; ++c) {
            row.push_back(u.values(k, c));
        }
        rows.push_back(row);
    }
    j["control"] = rows;
    std::ofstream(fs::path(dir) / "reference.json") << j.dump(2) << '\n';
    std::ofstream control_csv(fs::path(dir) / "reference_control.csv");
    write_control_csv(control_csv, u);
    std::ofstream samples_csv(fs::path(dir) / "reference_samples.csv");
    write_csv(samples_csv, ref.samples);
}

ReferenceSolution load_or_run_reference(const StudyConfig& cfg)
{
    const fs::path cache = fs::path(cfg.out_dir) / "reference.json";
    if (fs::exists(cache)) {
        json j;
        std::ifstream(cache) >> j;
        if (j.value("fingerprint", "") == cfg.reference_fingerprint()) {
            const BuiltinProblem bp = cfg.build();
            ReferenceSolution ref;
            ref.fingerprint = j["fingerprint"];
            ref.samples     = sample_sobol(bp.problem.parameters, cfg.n_ref, reference_seed(cfg.seed));
            ref.report.u_star = Control(bp.grid);
            for (int k = 0; k < bp.grid.intervals; ++k) {
                for (int c = 0; c < bp.grid.channels; ++c) {
                    ref.report.u_star.values(k, c) = j["control"][k][c].get<double>();
                }
            }
            ref.report.value       = j["v_ref"];
            ref.report.criticality = j["criticality"];
            ref.report.iterations  = j["iterations"];
            ref.report.converged   = j["converged"];
            ref.report.provenance  = ref.samples.provenance;
            return ref;
        }
    }
    ReferenceSolution ref = run_reference(cfg);
    save_reference(ref, cfg.out_dir);
    return ref;
}

StudyResult run_study(const StudyConfig& cfg, const ReferenceSolution& ref)
{
    const BuiltinProblem bp = cfg.build();
    StudyResult result;
    result.v_ref = ref.report.value;

    std::vector<std::pair<int, int>> tasks;
    for (int n : cfg.n_grid) {
        for (int r = 0; r < cfg.replications; ++r) {
            tasks.emplace_back(n, r);
        }
    }
    result.records.resize(tasks.size());

    parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int t) {
        const auto [n, r] = tasks[t];
        StudyRecord& rec  = result.records[t];
        rec.N             = n;
        rec.rep           = r;
        rec.seed          = replication_seed(cfg.seed, n, r);
        const auto start  = std::chrono::steady_clock::now();
        try {
            EnsembleProblem ep(bp.problem, bp.spec, sample_iid(bp.problem.parameters, n, rec.seed), 1);
            const SolveReport rep = solve(ep, Control(bp.grid), cfg.solver);
            rec.v_hat     = rep.value;
            rec.value_err = std::abs(rep.value - result.v_ref);
            rec.crit_ref  = reference_criticality(bp.problem, bp.spec, ref.samples, rep.u_star, 1);
            rec.iters     = rep.iterations;
            rec.status    = rep.converged ? "ok" : "nonconverged";
        }
        catch (const std::exception&) {
            rec.v_hat = rec.value_err = rec.crit_ref = std::numeric_limits<double>::quiet_NaN();
            rec.status = "failed";
        }
        if (cfg.record_timing) {
            rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    });

    result.analysis = analyze(result.records);
    return result;
}

TheoryConstants theory_constants(const StudyConfig& cfg)
{
    const BuiltinProblem bp = cfg.build();
    TheoryConstants tc      = cfg.theory;
    tc.r_psi                = std::max(1.0, bp.spec.r_psi());
    tc.m                    = bp.grid.channels;
    tc.alpha                = bp.spec.alpha;
    if (cfg.estimate_lipschitz) {
        const LipschitzEstimate est = estimate_lipschitz(bp.problem, bp.spec, bp.grid, 64, cfg.seed);
        tc.L_f                      = est.L_f;
        tc.L_F                      = est.L_F;
        tc.V0                       = est.V0;
    }
    return tc;
}

std::vector<std::vector<double>> bound_rows(const StudyConfig& cfg)
{
    const TheoryConstants tc = theory_constants(cfg);
    std::vector<std::vector<double>> rows;
    for (int n : cfg.n_grid) {
        rows.push_back({double(n), value_rate_bound(n, tc, RateKind::value), value_rate_bound(n, tc, RateKind::criticality)});
    }
    return rows;
}

void write_analysis_outputs(const StudyAnalysis& analysis, const std::string& title, const std::string& dir)
{
    fs::create_directories(dir);
    const fs::path base(dir);
    {
        std::ofstream os(base / "summary.csv");
        write_summary_csv(os, analysis.summary);
    }
    {
        std::ofstream os(base / "fits.csv");
        os << "metric,slope,intercept\n";
        os << "value_err," << format_double(analysis.value_fit.slope) << ','
           << format_double(analysis.value_fit.intercept) << '\n';
        os << "crit_ref," << format_double(analysis.crit_fit.slope) << ','
           << format_double(analysis.crit_fit.intercept) << '\n';
    }
    std::ofstream(base / "rates.svg") << render_rates_svg(analysis, title);
}

void write_study_outputs(const StudyConfig& cfg, const StudyResult& result, const std::string& dir)
{
    fs::create_directories(dir);
    const fs::path base(dir);
    {
        std::ofstream os(base / "records.csv");
        write_records_csv(os, result.records);
    }
    {
        std::ofstream os(base / "bounds.csv");
        write_bounds_csv(os, bound_rows(cfg));
    }
    write_analysis_outputs(result.analysis, cfg.problem + " SAA convergence", dir);
}

} // namespace saa
