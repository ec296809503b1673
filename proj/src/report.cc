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

#include "cheshire/report.h"

namespace cheshire {

nlohmann::ordered_json weak_value_report(const analysis::ExtractedWeakValue &w) {
    nlohmann::ordered_json out;
    out["observable"] = w.observable;
    out["re"] = w.re.value;
    out["re_sigma"] = w.re.sigma;
    if (w.im) {
        out["im"] = w.im->value;
        out["im_sigma"] = w.im->sigma;
    } else {
        out["im"] = nullptr;
        out["im_sigma"] = nullptr;
    }
    out["fit_degree"] = w.re_fit.degree;
    out["chi2"] = w.re_fit.chi2;
    out["dof"] = w.re_fit.dof;
    return out;
}

nlohmann::ordered_json path_set_report(const std::string &name, const VirtualPathSet &set) {
    nlohmann::ordered_json paths = nlohmann::ordered_json::array();
    for (size_t k = 0; k < set.paths.size(); k++) {
        nlohmann::ordered_json row;
        row["observable"] = set.paths[k].name;
        row["re"] = set.amplitudes[k].real();
        row["im"] = set.amplitudes[k].imag();
        paths.push_back(std::move(row));
    }
    Complex sum = set.sum();
    nlohmann::ordered_json out;
    out["name"] = name;
    out["paths"] = std::move(paths);
    out["sum"] = {{"re", sum.real()}, {"im", sum.imag()}};
    out["amplitudes_sum_to_one"] = std::abs(sum - Complex(1.0)) <= tol::kEquality;
    out["observables_sum_to_identity"] = set.complete;
    return out;
}

}  // namespace cheshire
