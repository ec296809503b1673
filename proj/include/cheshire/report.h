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

#ifndef CHESHIRE_REPORT_H
#define CHESHIRE_REPORT_H

#include <string>

#include "json.hpp"

#include "cheshire/analysis.h"
#include "cheshire/scenario.h"

namespace cheshire {

/// {observable, re, re_sigma, im, im_sigma, fit_degree, chi2, dof}; im fields are
/// null when the sweep had no y-basis data.
nlohmann::ordered_json weak_value_report(const analysis::ExtractedWeakValue &w);

/// {name, paths: [{observable, re, im}], sum: {re, im}, amplitudes_sum_to_one,
///  observables_sum_to_identity}
nlohmann::ordered_json path_set_report(const std::string &name, const VirtualPathSet &set);

}  // namespace cheshire

#endif
