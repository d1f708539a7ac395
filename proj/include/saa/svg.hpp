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
#ifndef SAA_SVG_HPP
#define SAA_SVG_HPP

#include "saa/control.hpp"
#include "saa/study.hpp"

#include <string>

namespace saa
{

/// Log-log plot of the two study means against N with their fitted lines.
std::string render_rates_svg(const StudyAnalysis& analysis, const std::string& title);

/// Step plot of every control channel over [0, t_f].
std::string render_control_svg(const Control& u, const std::string& title);

} // namespace saa

#endif // SAA_SVG_HPP
