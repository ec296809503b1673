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

#ifndef CHESHIRE_CLI_H
#define CHESHIRE_CLI_H

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cheshire/experiment.h"

namespace cheshire::cli {

enum class Format { kCsv, kJson };

/// Everything a run needs. Loaded from a single JSON object; see README for keys.
struct RunConfig {
    experiment::SweepConfig sweep;
    /// Set when the config (or --counts) asks for a noisy sweep.
    bool noisy = false;
    std::string out_dir = "out";
    Format format = Format::kCsv;
    int fit_degree = 3;
    /// PASS when |estimate - theory| < k_sigma * sigma ...
    double k_sigma = 2.0;
    /// ... or when it is below this floor (noiseless fits have sigma ~ 0).
    double theory_tolerance = 1e-3;
};

/// Throws ParseError naming the offending key. Unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json &doc);
/// Reads and parses a JSON file; parse errors carry line/column.
RunConfig load_run_config(const std::string &path);

/// Command-line flag overrides, applied on top of the config file.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> engine;
    std::optional<double> eta;
    std::optional<double> counts;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<std::string> input;
};

RunConfig resolve_config(const Overrides &overrides);

/// Analytic weak values and both virtual-path tables.
void cmd_weak_values(const RunConfig &config, std::ostream &out);
/// Writes curves.<fmt> (and sweep.<fmt> for noisy runs) into out_dir; prints a JSON summary.
void cmd_sweep(const RunConfig &config, std::ostream &out);
/// Reads a sweep file (default: out_dir/sweep.<fmt>, or curves.<fmt> when noiseless)
/// and prints the extraction report.
nlohmann::ordered_json cmd_extract(const RunConfig &config, const std::optional<std::string> &input, std::ostream &out);
/// sweep + extract + weak values; writes out_dir/report.json.
void cmd_report(const RunConfig &config, std::ostream &out);

/// Full CLI entry point. Exit codes: 0 success, 1 I/O or parse failure, 2 domain error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cheshire::cli

#endif
