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
#include "saa/config.hpp"
#include "saa/csv.hpp"
#include "saa/study.hpp"
#include "saa/svg.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace
{

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--config", o.config_path, "INI configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--set", o.overrides, "override a config key, section.key=value")->take_all();
}

saa::StudyConfig make_config(const CommonOptions& o)
{
    std::vector<std::string> overrides = o.overrides;
    if (o.seed) {
        overrides.push_back("study.seed=" + std::to_string(*o.seed));
    }
    if (o.out) {
        overrides.push_back("study.out=" + *o.out);
    }
    if (o.threads) {
        overrides.push_back("study.threads=" + std::to_string(*o.threads));
    }
    return o.config_path.empty() ? saa::config_from_overrides(overrides) : saa::load_config(o.config_path, overrides);
}

void print_report(const std::string& label, const saa::StudyConfig& cfg, const saa::SolveReport& r)
{
    const auto bp = cfg.build();
    std::cout << label << ": problem=" << bp.name << " alpha=" << bp.spec.alpha << " q=" << bp.grid.intervals
              << " samples=" << r.provenance.count << " (" << saa::to_string(r.provenance.generator) << ")\n"
              << "  value       " << saa::format_double(r.value) << '\n'
              << "  criticality " << saa::format_double(r.criticality) << '\n'
              << "  iterations  " << r.iterations << (r.converged ? "" : " (not converged)") << '\n'
              << "  step        last " << r.gamma_last << ", range [" << r.gamma_min << ", " << r.gamma_max
              << "], backtracks " << r.backtracks << '\n';
}

void write_solution(const fs::path& dir, const std::string& stem, const saa::SolveReport& r, const std::string& title)
{
    fs::create_directories(dir);
    std::ofstream csv(dir / (stem + "_control.csv"));
    saa::write_control_csv(csv, r.u_star);
    std::ofstream(dir / (stem + "_control.svg")) << saa::render_control_svg(r.u_star, title);
    nlohmann::json j = {{"value", r.value},
                        {"criticality", r.criticality},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"samples", r.provenance.count},
                        {"generator", saa::to_string(r.provenance.generator)},
                        {"seed", r.provenance.seed}};
    std::ofstream(dir / (stem + ".json")) << j.dump(2) << '\n';
}

void print_analysis(const saa::StudyAnalysis& a)
{
    std::cout << "       N  mean|v-vref|      se   mean chi_ref      se  n_ok\n";
    for (const auto& r : a.summary) {
        std::printf("%8d  %12.4e  %8.2e  %12.4e  %8.2e  %4d\n", r.N, r.mean_value_err, r.se_value_err, r.mean_crit,
                    r.se_crit, r.n_ok);
    }
    std::printf("slope (value error) %.4f\nslope (criticality) %.4f\n", a.value_fit.slope, a.crit_fit.slope);
    if (!a.complete) {
        std::cout << "warning: some replications failed or did not converge\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sample average approximation for ensemble optimal control"};
    app.require_subcommand(1);

    CommonOptions nominal_opts, reference_opts, study_opts, report_opts, bounds_opts;
    auto* nominal   = app.add_subcommand("nominal", "solve with the expected parameter");
    auto* reference = app.add_subcommand("reference", "solve the N_ref Sobol' reference problem");
    auto* study     = app.add_subcommand("study", "SAA convergence study over the N grid");
    auto* report    = app.add_subcommand("report", "re-fit rates from an existing records CSV");
    auto* bounds    = app.add_subcommand("bounds", "emit theoretical rate-bound curves");
    add_common(nominal, nominal_opts);
    add_common(reference, reference_opts);
    add_common(study, study_opts);
    add_common(report, report_opts);
    add_common(bounds, bounds_opts);
    std::string records_path;
    report->add_option("--records", records_path, "records CSV (default <out>/records.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*nominal) {
            const auto cfg = make_config(nominal_opts);
            const auto r   = saa::run_nominal(cfg);
            print_report("nominal", cfg, r);
            write_solution(cfg.out_dir, "nominal", r, cfg.problem + " nominal control");
            return r.converged ? 0 : 2;
        }
        if (*reference) {
            const auto cfg = make_config(reference_opts);
            const auto ref = saa::run_reference(cfg);
            saa::save_reference(ref, cfg.out_dir);
            print_report("reference", cfg, ref.report);
            std::ofstream(fs::path(cfg.out_dir) / "reference_control.svg")
                << saa::render_control_svg(ref.report.u_star, cfg.problem + " reference control");
            return ref.report.converged ? 0 : 2;
        }
        if (*study) {
            const auto cfg = make_config(study_opts);
            const auto ref = saa::load_or_run_reference(cfg);
            if (!ref.report.converged) {
                std::cerr << "reference solve did not converge\n";
                return 2;
            }
            std::cout << "v_ref " << saa::format_double(ref.report.value) << " (N_ref " << cfg.n_ref
                      << ", scrambled Sobol'); SAA samples are i.i.d. Monte Carlo\n";
            const auto result = saa::run_study(cfg, ref);
            saa::write_study_outputs(cfg, result, cfg.out_dir);
            print_analysis(result.analysis);
            return 0;
        }
        if (*report) {
            const auto cfg = make_config(report_opts);
            const fs::path path = records_path.empty() ? fs::path(cfg.out_dir) / "records.csv" : fs::path(records_path);
            std::ifstream in(path);
            if (!in) {
                std::cerr << "cannot open " << path << '\n';
                return 1;
            }
            const auto analysis = saa::analyze(saa::read_records_csv(in));
            print_analysis(analysis);
            if (report_opts.out) {
                saa::write_analysis_outputs(analysis, cfg.problem + " SAA convergence", cfg.out_dir);
            }
            return 0;
        }
        if (*bounds) {
            const auto cfg = make_config(bounds_opts);
            const auto tc  = saa::theory_constants(cfg);
            const auto R   = saa::radius_R(tc);
            std::cerr << "L_f=" << tc.L_f << " L_F=" << tc.L_F << " V0=" << tc.V0 << " r_psi=" << tc.r_psi
                      << " R0=" << R.R0 << " R=" << R.R << " (bounds hold up to the supplied constants)\n";
            const auto rows = saa::bound_rows(cfg);
            saa::write_bounds_csv(std::cout, rows);
            if (bounds_opts.out) {
                fs::create_directories(cfg.out_dir);
                std::ofstream os(fs::path(cfg.out_dir) / "bounds.csv");
                saa::write_bounds_csv(os, rows);
            }
            return 0;
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
