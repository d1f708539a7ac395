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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace saa
{

namespace pt = boost::property_tree;

namespace
{

std::string trim(std::string s)
{
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double d  = std::stod(v, &pos);
        if (pos == v.size()) {
            return d;
        }
    }
    catch (const std::exception&) {
    }
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v)
{
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "on" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "off" || v == "no") {
        return false;
    }
    throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& v)
{
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(to_int<int>(key, trim(item)));
    }
    return out;
}

using Setter = std::function<void(StudyConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"problem.name", [](StudyConfig& c, auto&, auto& v) { c.problem = v; }},
        {"problem.t_final", [](StudyConfig& c, auto& k, auto& v) { c.t_final = to_double(k, v); }},
        {"problem.sigma", [](StudyConfig& c, auto& k, auto& v) { c.sigma = to_double(k, v); }},
        {"regularizer.alpha", [](StudyConfig& c, auto& k, auto& v) { c.alpha = to_double(k, v); }},
        {"regularizer.beta", [](StudyConfig& c, auto& k, auto& v) { c.beta = to_double(k, v); }},
        {"regularizer.lo", [](StudyConfig& c, auto& k, auto& v) { c.lo = to_double(k, v); }},
        {"regularizer.hi", [](StudyConfig& c, auto& k, auto& v) { c.hi = to_double(k, v); }},
        {"discretization.q", [](StudyConfig& c, auto& k, auto& v) { c.intervals = to_int<int>(k, v); }},
        {"discretization.steps_per_interval",
         [](StudyConfig& c, auto& k, auto& v) { c.steps_per_interval = to_int<int>(k, v); }},
        {"solver.tol", [](StudyConfig& c, auto& k, auto& v) { c.solver.tol = to_double(k, v); }},
        {"solver.max_iters", [](StudyConfig& c, auto& k, auto& v) { c.solver.max_iters = to_int<int>(k, v); }},
        {"solver.step",
         [](StudyConfig& c, auto& k, auto& v) {
             if (v == "fixed") {
                 c.solver.step_mode = StepMode::fixed;
             }
             else if (v == "backtracking") {
                 c.solver.step_mode = StepMode::backtracking;
             }
             else {
                 throw ConfigError("config: '" + k + "' must be 'fixed' or 'backtracking'");
             }
         }},
        {"solver.gamma", [](StudyConfig& c, auto& k, auto& v) { c.solver.gamma = to_double(k, v); }},
        {"solver.shrink", [](StudyConfig& c, auto& k, auto& v) { c.solver.shrink = to_double(k, v); }},
        {"solver.growth", [](StudyConfig& c, auto& k, auto& v) { c.solver.growth = to_double(k, v); }},
        {"solver.accelerate", [](StudyConfig& c, auto& k, auto& v) { c.solver.accelerate = to_bool(k, v); }},
        {"study.n_grid", [](StudyConfig& c, auto& k, auto& v) { c.n_grid = to_int_list(k, v); }},
        {"study.replications", [](StudyConfig& c, auto& k, auto& v) { c.replications = to_int<int>(k, v); }},
        {"study.n_ref", [](StudyConfig& c, auto& k, auto& v) { c.n_ref = to_int<int>(k, v); }},
        {"study.seed", [](StudyConfig& c, auto& k, auto& v) { c.seed = to_int<std::uint64_t>(k, v); }},
        {"study.threads", [](StudyConfig& c, auto& k, auto& v) { c.threads = to_int<int>(k, v); }},
        {"study.out", [](StudyConfig& c, auto&, auto& v) { c.out_dir = v; }},
        {"study.record_timing", [](StudyConfig& c, auto& k, auto& v) { c.record_timing = to_bool(k, v); }},
        {"theory.L_f", [](StudyConfig& c, auto& k, auto& v) { c.theory.L_f = to_double(k, v); }},
        {"theory.L_F", [](StudyConfig& c, auto& k, auto& v) { c.theory.L_F = to_double(k, v); }},
        {"theory.V0", [](StudyConfig& c, auto& k, auto& v) { c.theory.V0 = to_double(k, v); }},
        {"theory.rho", [](StudyConfig& c, auto& k, auto& v) { c.theory.rho = to_double(k, v); }},
        {"theory.c0", [](StudyConfig& c, auto& k, auto& v) { c.theory.c0 = to_double(k, v); }},
        {"theory.c0_grad", [](StudyConfig& c, auto& k, auto& v) { c.theory.c0_grad = to_double(k, v); }},
        {"theory.L_grad_T", [](StudyConfig& c, auto& k, auto& v) { c.theory.L_grad_T = to_double(k, v); }},
        {"theory.estimate", [](StudyConfig& c, auto& k, auto& v) { c.estimate_lipschitz = to_bool(k, v); }},
    };
    return table;
}

void apply(StudyConfig& cfg, const std::string& key, const std::string& value)
{
    const auto it = setters().find(key);
    if (it == setters().end()) {
        throw ConfigError("config: unknown key '" + key + "'");
    }
    it->second(cfg, key, trim(value));
}

StudyConfig from_tree(const pt::ptree& tree, const std::vector<std::string>& overrides)
{
    StudyConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError("config: key '" + section + "' outside of any section");
        }
        for (const auto& [key, node] : body) {
            apply(cfg, section + "." + key, node.get_value<std::string>());
        }
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: override '" + o + "' is not of the form section.key=value");
        }
        apply(cfg, trim(o.substr(0, eq)), o.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

} // namespace

void StudyConfig::validate() const
{
    if (problem != "oscillator" && problem != "vaccination") {
        throw ConfigError("config: problem.name must be 'oscillator' or 'vaccination', got '" + problem + "'");
    }
    if (n_grid.size() < 2 || !std::is_sorted(n_grid.begin(), n_grid.end()) ||
        std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end() || n_grid.front() < 1) {
        throw ConfigError("config: study.n_grid must hold at least two strictly ascending positive sizes");
    }
    if (replications < 2) {
        throw ConfigError("config: study.replications must be >= 2");
    }
    if (n_ref <= n_grid.back()) {
        throw ConfigError("config: study.n_ref must exceed the largest N in study.n_grid");
    }
    if (threads < 1) {
        throw ConfigError("config: study.threads must be >= 1");
    }
    if (intervals < 1 || steps_per_interval < 1) {
        throw ConfigError("config: discretization.q and steps_per_interval must be >= 1");
    }
    try {
        solver.validate();
        theory.validate();
        build();
    }
    catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

BuiltinProblem StudyConfig::build() const
{
    BuiltinProblem bp;
    if (problem == "oscillator") {
        OscillatorConfig oc;
        oc.alpha              = alpha.value_or(oc.alpha);
        oc.t_final            = t_final.value_or(oc.t_final);
        oc.intervals          = intervals;
        oc.steps_per_interval = steps_per_interval;
        bp = oscillator_problem(oc);
    }
    else {
        VaccinationConfig vc;
        vc.alpha              = alpha.value_or(vc.alpha);
        vc.t_final            = t_final.value_or(vc.t_final);
        vc.sigma              = sigma.value_or(vc.sigma);
        vc.intervals          = intervals;
        vc.steps_per_interval = steps_per_interval;
        bp = vaccination_problem(vc);
    }
    const int m = bp.grid.channels;
    bp.spec     = RegularizerSpec(bp.spec.alpha, beta, lo ? Eigen::VectorXd::Constant(m, *lo) : bp.spec.lo,
                                  hi ? Eigen::VectorXd::Constant(m, *hi) : bp.spec.hi);
    return bp;
}

std::string StudyConfig::reference_fingerprint() const
{
    const BuiltinProblem bp = build();
    std::ostringstream os;
    os.precision(17);
    os << bp.name << ";tf=" << bp.grid.t_final << ";q=" << bp.grid.intervals << ";s=" << steps_per_interval
       << ";alpha=" << bp.spec.alpha << ";beta=" << bp.spec.beta << ";lo=" << bp.spec.lo.transpose()
       << ";hi=" << bp.spec.hi.transpose() << ";box_lo=" << bp.problem.parameters.lo.transpose()
       << ";box_hi=" << bp.problem.parameters.hi.transpose() << ";n_ref=" << n_ref << ";seed=" << seed
       << ";tol=" << solver.tol;
    return os.str();
}

StudyConfig parse_config(const std::string& text, const std::vector<std::string>& overrides)
{
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return from_tree(tree, overrides);
}

StudyConfig load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

StudyConfig config_from_overrides(const std::vector<std::string>& overrides)
{
    return from_tree(pt::ptree{}, overrides);
}

} // namespace saa
