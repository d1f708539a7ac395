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
#include "saa/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace saa
{

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

void write_records_csv(std::ostream& os, const std::vector<StudyRecord>& records)
{
    os << "N,rep,seed,v_hat,value_err,crit_ref,iters,wall_ms,status\n";
    for (const auto& r : records) {
        os << r.N << ',' << r.rep << ',' << r.seed << ',' << format_double(r.v_hat) << ','
           << format_double(r.value_err) << ',' << format_double(r.crit_ref) << ',' << r.iters << ','
           << format_double(r.wall_ms) << ',' << r.status << '\n';
    }
}

std::vector<StudyRecord> read_records_csv(std::istream& is)
{
    std::vector<StudyRecord> out;
    std::string line;
    if (!std::getline(is, line) || line.rfind("N,rep,seed", 0) != 0) {
        throw std::runtime_error("records csv: missing header");
    }
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 9) {
            throw std::runtime_error("records csv: line " + std::to_string(lineno) + " has " +
                                     std::to_string(f.size()) + " fields, expected 9");
        }
        try {
            StudyRecord r;
            r.N         = std::stoi(f[0]);
            r.rep       = std::stoi(f[1]);
            r.seed      = std::stoull(f[2]);
            r.v_hat     = std::stod(f[3]);
            r.value_err = std::stod(f[4]);
            r.crit_ref  = std::stod(f[5]);
            r.iters     = std::stoi(f[6]);
            r.wall_ms   = std::stod(f[7]);
            r.status    = f[8];
            out.push_back(r);
        }
        catch (const std::logic_error&) {
            throw std::runtime_error("records csv: malformed number on line " + std::to_string(lineno));
        }
    }
    return out;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
    os << "N,mean_value_err,se_value_err,mean_crit,se_crit,n_ok\n";
    for (const auto& r : rows) {
        os << r.N << ',' << format_double(r.mean_value_err) << ',' << format_double(r.se_value_err) << ','
           << format_double(r.mean_crit) << ',' << format_double(r.se_crit) << ',' << r.n_ok << '\n';
    }
}

void write_bounds_csv(std::ostream& os, const std::vector<std::vector<double>>& rows)
{
    os << "N,thm61_bound,thm71_bound\n";
    for (const auto& r : rows) {
        os << static_cast<long>(r.at(0)) << ',' << format_double(r.at(1)) << ',' << format_double(r.at(2)) << '\n';
    }
}

void write_control_csv(std::ostream& os, const Control& u)
{
    os << "t_start,t_end";
    for (int j = 0; j < u.grid.channels; ++j) {
        os << ",u" << j + 1;
    }
    os << '\n';
    const double dt = u.grid.step();
    for (int k = 0; k < u.grid.intervals; ++k) {
        os << format_double(k * dt) << ',' << format_double((k + 1) * dt);
        for (int j = 0; j < u.grid.channels; ++j) {
            os << ',' << format_double(u.values(k, j));
        }
        os << '\n';
    }
}

} // namespace saa
