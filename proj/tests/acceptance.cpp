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
// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "support.hpp"

#include "saa/config.hpp"
#include "saa/csv.hpp"
#include "saa/parallel.hpp"
#include "saa/problems.hpp"
#include "saa/solver.hpp"
#include "saa/study.hpp"
#include "saa/theory.hpp"

#include "CLI11.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

using namespace saa;
using namespace saa::testing;
namespace fs = std::filesystem;

namespace
{

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

SampleSet no_parameters()
{
    SampleSet s;
    s.points.resize(1, 0);
    return s;
}

// AC1 and AC2 share one study.
struct OscillatorStudy {
    StudyResult result;
    double v_ref        = 0.0;
    double ref_crit     = 0.0;
    double seconds      = 0.0;
    bool ref_converged  = false;
};

OscillatorStudy run_oscillator_study(const fs::path& out, int threads)
{
    auto cfg    = config_from_overrides({"problem.name=oscillator", "study.seed=1"});
    cfg.threads = threads;
    OscillatorStudy s;
    const auto start = std::chrono::steady_clock::now();
    const auto ref   = run_reference(cfg);
    s.result         = run_study(cfg, ref);
    s.seconds        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    s.v_ref          = ref.report.value;
    s.ref_crit       = ref.report.criticality;
    s.ref_converged  = ref.report.converged;
    save_reference(ref, out.string());
    write_study_outputs(cfg, s.result, out.string());
    return s;
}

std::string slope_detail(const OscillatorStudy& s, double slope, const char* metric)
{
    int not_ok = 0;
    for (const auto& r : s.result.records) {
        not_ok += r.status != "ok";
    }
    return std::string(metric) + " slope " + fmt(slope) + " (window [-0.65, -0.35]); " +
           std::to_string(s.result.records.size()) + " solves, " + std::to_string(not_ok) + " not ok, v_ref " +
           fmt(s.v_ref) + ", " + fmt(s.seconds) + " s";
}

Outcome ac1(const OscillatorStudy& s)
{
    const double slope = s.result.analysis.value_fit.slope;
    return {s.ref_converged && s.result.analysis.complete && slope >= -0.65 && slope <= -0.35,
            slope_detail(s, slope, "value-error")};
}

Outcome ac2(const OscillatorStudy& s)
{
    const double slope = s.result.analysis.crit_fit.slope;
    return {s.ref_converged && s.result.analysis.complete && slope >= -0.65 && slope <= -0.35,
            slope_detail(s, slope, "criticality")};
}

Outcome ac3()
{
    double worst = 0.0;
    std::mt19937_64 rng(2026);
    for (const auto& bp : {oscillator_problem(), vaccination_problem()}) {
        const auto xs = sample_iid(bp.problem.parameters, 10, rng());
        for (int i = 0; i < 10; ++i) {
            const Control u = random_control(bp.grid, bp.spec.lo(0), bp.spec.hi(0), rng);
            const double err =
                relative_error(gradient_sample(bp.problem, u, xs.point(i)), fd_gradient(bp.problem, u, xs.point(i), 1e-5));
            worst = std::max(worst, err);
        }
    }
    return {worst <= 1e-5, "max relative error " + fmt(worst) + " over 20 (u, xi)"};
}

// Minimizes (x - v)^2 / (2 gamma) + beta |x| on [lo, hi] by successive grid refinement.
double brute_force_prox(double v, double gamma, double beta, double lo, double hi)
{
    auto phi   = [&](double x) { return (x - v) * (x - v) / (2.0 * gamma) + beta * std::abs(x); };
    double a   = lo, b = hi, best = lo;
    for (int level = 0; level < 6; ++level) {
        const int n = 2000;
        double fbest = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            const double x = a + (b - a) * i / n;
            if (phi(x) < fbest) {
                fbest = phi(x);
                best  = x;
            }
        }
        const double w = (b - a) / n;
        a = std::max(lo, best - 2 * w);
        b = std::min(hi, best + 2 * w);
    }
    return best;
}

Outcome ac4()
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double lo = -5.0 + 5.0 * U(rng), hi = lo + 0.1 + 5.0 * U(rng);
        const double beta = trial % 4 == 0 ? 0.0 : 2.0 * U(rng), gamma = 0.01 + 3.0 * U(rng);
        const auto spec   = RegularizerSpec::uniform_box(1.0, beta, 2, lo, hi);
        const Control v   = random_control(ControlGrid(1.5, 3, 2), -8.0, 8.0, rng);
        const Control p   = prox_psi_alpha(v, gamma, spec);
        for (Eigen::Index i = 0; i < v.values.size(); ++i) {
            const double ref = brute_force_prox(v.values.data()[i], gamma, beta, lo, hi);
            worst            = std::max(worst, std::abs(p.values.data()[i] - ref));
        }
    }
    double excess = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double lo = -3.0 * U(rng), hi = 3.0 * U(rng);
        const auto spec  = RegularizerSpec::uniform_box(1.0, 2.0 * U(rng), 2, lo, hi);
        const double gamma = 0.01 + 3.0 * U(rng);
        const ControlGrid grid(2.0, 10, 2);
        const Control a = random_control(grid, -6.0, 6.0, rng), b = random_control(grid, -6.0, 6.0, rng);
        excess = std::max(excess, distance(prox_psi_alpha(a, gamma, spec), prox_psi_alpha(b, gamma, spec)) - distance(a, b));
    }
    return {worst <= 1e-4 && excess <= 1e-12,
            "max deviation from grid search " + fmt(worst) + " over 1000 instances; max expansion " + fmt(excess) +
                " over 100 pairs"};
}

Outcome ac5()
{
    const int q       = 50;
    const double alpha = 2.0, dt = 1.0 / q;
    double worst_u = 0.0, worst_crit = 0.0;
    for (double x0 : {0.0, 1.0}) {
        const EnsembleProblem ep(integrator_toy(x0), RegularizerSpec::uniform_box(alpha, 0.0, 1, -3.0, 3.0),
                                 no_parameters());
        const Eigen::MatrixXd A =
            2.0 * dt * dt * Eigen::MatrixXd::Ones(q, q) + alpha * dt * Eigen::MatrixXd::Identity(q, q);
        const Eigen::VectorXd oracle = A.ldlt().solve(Eigen::VectorXd::Constant(q, -2.0 * dt * x0));
        const auto r = solve(ep, Control(ControlGrid(1.0, q, 1)));
        worst_u      = std::max(worst_u, r.converged ? (r.u_star.values.col(0) - oracle).norm() : INFINITY);
        worst_crit   = std::max(worst_crit, criticality(ep, Control(ControlGrid(1.0, q, 1), oracle)));
    }
    return {worst_u <= 1e-7 && worst_crit <= 1e-7,
            "|u - u_oracle| " + fmt(worst_u) + ", criticality at oracle " + fmt(worst_crit) + " (x0 = 0 and 1)"};
}

Outcome ac6()
{
    const auto bp = oscillator_problem();
    const EnsembleProblem ep(bp.problem, bp.spec, sample_iid(bp.problem.parameters, 16, 616));
    SolverOptions a, b;
    a.step_mode = b.step_mode = StepMode::fixed;
    a.gamma = 0.1;
    b.gamma = 0.25;
    const auto ra = solve(ep, Control(bp.grid), a);
    const auto rb = solve(ep, Control(bp.grid), b);
    const double d = distance(ra.u_star, rb.u_star);
    return {ra.converged && rb.converged && d <= 10.0 * a.tol,
            "gamma 0.1 vs 0.25: distance " + fmt(d) + " (iterations " + std::to_string(ra.iterations) + ", " +
                std::to_string(rb.iterations) + ")"};
}

Outcome ac7()
{
    const double x0 = 1.0, tf = 2.0;
    const double exact = 2.0 * std::atan(std::tan(x0 / 2.0) * std::exp(tf));
    const auto p       = sine_field(x0);
    const Vector none(0);
    const double e1 = std::abs(integrate_forward(p, Control(ControlGrid(tf, 10, 1)), none).final_state()(0) - exact);
    const double e2 = std::abs(integrate_forward(p, Control(ControlGrid(tf, 20, 1)), none).final_state()(0) - exact);
    const double ratio = e1 / e2;
    return {ratio >= 12.0 && ratio <= 20.0, "error ratio " + fmt(ratio)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome ac8(const fs::path& out)
{
    const int many = std::max(4, max_threads());
    std::vector<std::string> texts;
    for (int threads : {1, many}) {
        auto cfg    = config_from_overrides({"problem.name=oscillator", "study.n_grid=4,8,16,32",
                                             "study.replications=6", "study.n_ref=512", "study.seed=8",
                                             "study.record_timing=false"});
        cfg.threads = threads;
        const fs::path dir = out / ("threads_" + std::to_string(threads));
        const auto ref     = run_reference(cfg);
        write_study_outputs(cfg, run_study(cfg, ref), dir.string());
        texts.push_back(slurp(dir / "records.csv"));
    }
    return {!texts[0].empty() && texts[0] == texts[1],
            "records.csv with 1 and " + std::to_string(many) + " threads: " +
                (texts[0] == texts[1] ? "identical" : "different") + " (" + std::to_string(texts[0].size()) + " bytes)"};
}

Outcome ac9()
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    auto rel     = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    for (int trial = 0; trial < 200; ++trial) {
        TheoryConstants tc;
        tc.L_f = 1.0 + 2.0 * U(rng);
        tc.L_F = 1.0 + 2.0 * U(rng);
        tc.V0  = 1.0 + 2.0 * U(rng);
        tc.r_psi = 1.0 + 2.0 * U(rng);
        tc.m     = 1 + trial % 3;
        tc.alpha = 0.1 + 3.0 * U(rng);
        tc.rho   = 0.1 + 2.0 * U(rng);
        tc.c0    = 3.0 * U(rng);
        const double a = tc.L_f, b = tc.L_F, v = tc.V0, r = tc.r_psi;
        const double R0 = a * std::exp(a) + a * b * std::exp(a);
        const double R  = R0 + 6.0 * a * a * a * (1.0 + b + v + b * v) * std::exp(a + 2.0 * a * r);
        worst = std::max({worst, rel(radius_R(tc).R0, R0), rel(radius_R(tc).R, R)});

        const double nu = 0.01 + U(rng), m = tc.m;
        worst = std::max(worst, rel(covering_bound_log2(tc.m, R, tc.alpha, nu, tc.rho),
                                    tc.rho * std::pow(m, 1.5) * R / (tc.alpha * nu)));

        const double c1 = 5.0 * U(rng), D = 0.01 + 5.0 * U(rng), half = D / 2.0;
        worst = std::max(worst, rel(entropy_integral_bound(c1, D), std::sqrt(half * (c1 + half)) + std::sqrt(half * c1)));

        const long N   = 1 + static_cast<long>(1000 * U(rng));
        const double L = std::sqrt(2.0) * b * a * std::exp(a);
        const double expected =
            (tc.c0 + 16.0 * std::sqrt(3.0) * L * r * std::sqrt(1.0 + tc.rho * std::pow(m, 1.5) * R / tc.alpha)) /
            std::sqrt(double(N));
        worst = std::max(worst, rel(value_rate_bound(N, tc), expected));
    }

    int violations = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const double c1 = 5.0 * U(rng), D = 0.01 + 5.0 * U(rng);
        // Simpson in t with eps = t^2.
        const int n = 4000;
        const double top = std::sqrt(D / 2.0), h = top / n;
        auto f = [&](double t) { return 2.0 * std::sqrt(std::numbers::ln2 * (t * t + c1)); };
        double s = f(0.0) + f(top);
        for (int i = 1; i < n; ++i) {
            s += (i % 2 ? 4.0 : 2.0) * f(i * h);
        }
        violations += s * h / 3.0 > entropy_integral_bound(c1, D);
    }
    return {worst <= 1e-12 && violations == 0,
            "max relative deviation " + fmt(worst) + " over 200 inputs; entropy bound violated " +
                std::to_string(violations) + "/50"};
}

Outcome ac10()
{
    const VaccinationConfig vc;
    ProblemDef p = make_vaccination(vc);
    p.parameters = ParameterBox(Eigen::VectorXd::Zero(6), Eigen::VectorXd::Ones(6));
    std::mt19937_64 rng(10);
    double drift = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        Vector xi(6);
        const double b = 0.45 + 0.15 * std::uniform_real_distribution<double>()(rng);
        xi << 0.0, b, 0.001, b, 0.5, 0.1;
        const auto traj = integrate_forward(p, random_control(ControlGrid(20.0, 50, 1), 0.0, 0.9, rng), xi);
        drift = std::max(drift, (traj.states.col(3).array() - vc.N0()).abs().maxCoeff());
    }
    const double h    = 1e-4;
    const auto step   = integrate_forward(make_vaccination(vc), Control(ControlGrid(h, 1, 1)), vc.nominal);
    const double slope = (step.final_state()(2) - vc.I0) / h;
    return {drift <= 1e-8 && std::abs(slope - 10.0) <= 0.1,
            "max |N - N0| " + fmt(drift) + "; (I(h) - I(0))/h = " + fmt(slope) + " at h = 1e-4"};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app("acceptance checks");
    std::string out = "acceptance_out";
    int threads     = max_threads();
    app.add_option("--out", out, "directory for study outputs");
    app.add_option("--threads", threads, "threads for the oscillator study");
    CLI11_PARSE(app, argc, argv);
    fs::create_directories(out);

    int failures = 0;
    auto report  = [&](int id, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        }
        catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << "AC" << id << ' ' << (o.pass ? "PASS" : "FAIL") << ": " << o.detail << std::endl;
    };

    std::optional<OscillatorStudy> study;
    std::string study_error;
    try {
        study = run_oscillator_study(fs::path(out) / "oscillator", threads);
    }
    catch (const std::exception& e) {
        study_error = e.what();
    }
    report(1, [&] { return study ? ac1(*study) : Outcome{false, "study failed: " + study_error}; });
    report(2, [&] { return study ? ac2(*study) : Outcome{false, "study failed: " + study_error}; });
    report(3, ac3);
    report(4, ac4);
    report(5, ac5);
    report(6, ac6);
    report(7, ac7);
    report(8, [&] { return ac8(fs::path(out) / "determinism"); });
    report(9, ac9);
    report(10, ac10);

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
