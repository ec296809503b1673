// Copyright 2026 The Cheshire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHESHIRE_SWEEP_IO_H
#define CHESHIRE_SWEEP_IO_H

#include <iosfwd>
#include <string>
#include <string_view>

#include "cheshire/experiment.h"

namespace cheshire {

/// Shortest decimal string that parses back to exactly `x` ("nan", "inf", "-inf" for non-finite).
std::string format_double(double x);
/// Strict full-string parse; throws ParseError.
double parse_double(std::string_view text);

namespace experiment {

inline constexpr std::string_view kSweepCsvHeader = "g_rad,theta_a_deg,basis,n_plus,n_minus,estimate,stderr";
inline constexpr std::string_view kSweepJsonSchema = "cheshire.sweep.v1";

/// One row per SweepPoint. A missing estimate is written as an empty field.
void write_sweep_csv(const SweepResult &result, std::ostream &out);
/// Throws ParseError naming the 1-based line number of the offending row.
SweepResult read_sweep_csv(std::istream &in);

/// {"schema": "cheshire.sweep.v1", "points": [{g_rad, theta_a_deg, basis,
///  n_plus, n_minus, estimate (number or null), stderr}, ...]}
void write_sweep_json(const SweepResult &result, std::ostream &out);
SweepResult read_sweep_json(std::istream &in);

}  // namespace experiment
}  // namespace cheshire

#endif
