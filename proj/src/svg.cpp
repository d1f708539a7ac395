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
#include "saa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace saa
{

namespace
{

constexpr double width   = 640.0;
constexpr double height  = 420.0;
constexpr double margin  = 60.0;
const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Axis {
    double lo, hi;
    double map(double v, double out_lo, double out_hi) const
    {
        if (hi == lo) {
            return 0.5 * (out_lo + out_hi);
        }
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

void header(std::ostringstream& os, const std::string& title)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n"
       << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
       << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
}

} // namespace

std::string render_rates_svg(const StudyAnalysis& analysis, const std::string& title)
{
    std::vector<double> lx, ly;
    for (const auto& r : analysis.summary) {
        if (r.n_ok == 0) {
            continue;
        }
        lx.push_back(std::log10(double(r.N)));
        for (double v : {r.mean_value_err, r.mean_crit}) {
            if (v > 0.0) {
                ly.push_back(std::log10(v));
            }
        }
    }
    std::ostringstream os;
    header(os, title);
    if (lx.empty() || ly.empty()) {
        os << "</svg>\n";
        return os.str();
    }
    const Axis ax{*std::min_element(lx.begin(), lx.end()), *std::max_element(lx.begin(), lx.end())};
    const Axis ay{std::floor(*std::min_element(ly.begin(), ly.end())), std::ceil(*std::max_element(ly.begin(), ly.end()))};
    auto px = [&](double v) { return ax.map(v, margin, width - margin); };
    auto py = [&](double v) { return ay.map(v, height - margin, margin); };

    for (int e = int(ay.lo); e <= int(ay.hi); ++e) {
        os << "<text x=\"" << margin - 6 << "\" y=\"" << py(e) + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    for (const auto& r : analysis.summary) {
        os << "<text x=\"" << px(std::log10(double(r.N))) << "\" y=\"" << height - margin + 16
           << "\" text-anchor=\"middle\">" << r.N << "</text>\n";
    }

    const RateFit fits[] = {analysis.value_fit, analysis.crit_fit};
    const char* names[]  = {"mean |v_N - v_ref|", "mean chi_ref(u_N)"};
    for (int s = 0; s < 2; ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[s] << "\" points=\"";
        for (const auto& r : analysis.summary) {
            const double v = s == 0 ? r.mean_value_err : r.mean_crit;
            if (r.n_ok > 0 && v > 0.0) {
                os << px(std::log10(double(r.N))) << ',' << py(std::log10(v)) << ' ';
            }
        }
        os << "\"/>\n";
        // Fitted line: log10(mean) = slope * log10(N) + intercept / ln(10).
        const double b = fits[s].intercept / std::log(10.0);
        os << "<line x1=\"" << px(ax.lo) << "\" y1=\"" << py(fits[s].slope * ax.lo + b) << "\" x2=\"" << px(ax.hi)
           << "\" y2=\"" << py(fits[s].slope * ax.hi + b) << "\" stroke=\"" << colors[s]
           << "\" stroke-dasharray=\"5,4\"/>\n";
        os << "<text x=\"" << margin + 10 << "\" y=\"" << margin + 18 + 16 * s << "\" fill=\"" << colors[s] << "\">"
           << names[s] << ", slope " << fits[s].slope << "</text>\n";
    }
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">N</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_control_svg(const Control& u, const std::string& title)
{
    std::ostringstream os;
    header(os, title);
    double lo = u.values.minCoeff(), hi = u.values.maxCoeff();
    if (hi - lo < 1e-12) {
        lo -= 1.0;
        hi += 1.0;
    }
    const Axis ax{0.0, u.grid.t_final};
    const Axis ay{lo, hi};
    auto px = [&](double v) { return ax.map(v, margin, width - margin); };
    auto py = [&](double v) { return ay.map(v, height - margin, margin); };
    os << "<text x=\"" << margin - 6 << "\" y=\"" << py(hi) + 4 << "\" text-anchor=\"end\">" << hi << "</text>\n"
       << "<text x=\"" << margin - 6 << "\" y=\"" << py(lo) + 4 << "\" text-anchor=\"end\">" << lo << "</text>\n"
       << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16 << "\" text-anchor=\"end\">"
       << u.grid.t_final << "</text>\n";
    const double dt = u.grid.step();
    for (int j = 0; j < u.grid.channels; ++j) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[j % 4] << "\" points=\"";
        for (int k = 0; k < u.grid.intervals; ++k) {
            os << px(k * dt) << ',' << py(u.values(k, j)) << ' ' << px((k + 1) * dt) << ',' << py(u.values(k, j))
               << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << margin + 10 << "\" y=\"" << margin + 18 + 16 * j << "\" fill=\"" << colors[j % 4]
           << "\">u" << j + 1 << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace saa
