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
#ifndef SAA_CSV_HPP
#define SAA_CSV_HPP

#include "saa/control.hpp"
#include "saa/study.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace saa
{

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

void write_records_csv(std::ostream& os, const std::vector<StudyRecord>& records);
std::vector<StudyRecord> read_records_csv(std::istream& is);

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
void write_bounds_csv(std::ostream& os, const std::vector<std::vector<double>>& rows);

/// t_start, t_end, u1..um per interval.
void write_control_csv(std::ostream& os, const Control& u);

} // namespace saa

#endif // SAA_CSV_HPP
