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

#include <fstream>
#include <functional>
#include <map>

#include "cheshire/cli.h"
#include "cheshire/errors.h"
#include "cheshire/scenario.h"

namespace cheshire::cli {

namespace {

using Json = nlohmann::json;

experiment::Engine parse_engine(const std::string &name, double eta, bool balanced) {
    if (name == "direct") {
        return experiment::DirectEngine{};
    }
    if (name == "ppbs") {
        return experiment::PpbsEngine{eta, balanced};
    }
    throw ParseError("engine must be 'direct' or 'ppbs', got '" + name + "'");
}

Format parse_format(const std::string &name) {
    if (name == "csv") {
        return Format::kCsv;
    }
    if (name == "json") {
        return Format::kJson;
    }
    throw ParseError("format must be 'csv' or 'json', got '" + name + "'");
}

StateVector parse_system_state(const Json &value) {
    if (!value.is_array() || value.size() != system_space().dim()) {
        throw ParseError("expected an array of 4 amplitudes ordered (u,H), (u,V), (l,H), (l,V)");
    }
    Eigen::VectorXcd amps(4);
    for (size_t k = 0; k < 4; k++) {
        const auto &a = value[k];
        if (a.is_number()) {
            amps[static_cast<Eigen::Index>(k)] = a.get<double>();
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
            amps[static_cast<Eigen::Index>(k)] = Complex(a[0].get<double>(), a[1].get<double>());
        } else {
            throw ParseError("amplitude " + std::to_string(k) + " must be a number or [re, im]");
        }
    }
    return {system_space(), amps};
}

}  // namespace

RunConfig parse_run_config(const Json &doc) {
    if (!doc.is_object()) {
        throw ParseError("config must be a JSON object");
    }
    RunConfig cfg;
    std::string engine = "direct";
    double eta = 1.0;
    bool balanced = true;
    std::optional<double> g_max;
    std::optional<size_t> g_points;

    const std::map<std::string, std::function<void(const Json &)>> handlers{
        {"g_values", [&](const Json &v) { cfg.sweep.g_values = v.get<std::vector<double>>(); }},
        {"g_max", [&](const Json &v) { g_max = v.get<double>(); }},
        {"g_points", [&](const Json &v) { g_points = v.get<size_t>(); }},
        {"probe_settings_deg", [&](const Json &v) { cfg.sweep.probe_settings_deg = v.get<std::vector<double>>(); }},
        {"pointer_bases",
         [&](const Json &v) {
             cfg.sweep.pointer_bases.clear();
             for (const auto &b : v.get<std::vector<std::string>>()) {
                 try {
                     cfg.sweep.pointer_bases.push_back(experiment::parse_basis(b));
                 } catch (const DomainError &e) {
                     throw ParseError(e.what());
                 }
             }
         }},
        {"counts",
         [&](const Json &v) {
             if (!v.is_null()) {
                 cfg.sweep.counts_per_setting = v.get<double>();
                 cfg.noisy = true;
             }
         }},
        {"seed", [&](const Json &v) { cfg.sweep.seed = v.get<uint64_t>(); }},
        {"engine", [&](const Json &v) { engine = v.get<std::string>(); }},
        {"eta", [&](const Json &v) { eta = v.get<double>(); }},
        {"balanced", [&](const Json &v) { balanced = v.get<bool>(); }},
        {"absolute_rates", [&](const Json &v) { cfg.sweep.absolute_rates = v.get<bool>(); }},
        {"threads", [&](const Json &v) { cfg.sweep.threads = v.get<unsigned>(); }},
        {"pre_system", [&](const Json &v) { cfg.sweep.pre = parse_system_state(v); }},
        {"post_system", [&](const Json &v) { cfg.sweep.post = parse_system_state(v); }},
        {"out_dir", [&](const Json &v) { cfg.out_dir = v.get<std::string>(); }},
        {"format", [&](const Json &v) { cfg.format = parse_format(v.get<std::string>()); }},
        {"fit_degree", [&](const Json &v) { cfg.fit_degree = v.get<int>(); }},
        {"k_sigma", [&](const Json &v) { cfg.k_sigma = v.get<double>(); }},
        {"theory_tolerance", [&](const Json &v) { cfg.theory_tolerance = v.get<double>(); }},
    };

    for (const auto &[key, value] : doc.items()) {
        auto it = handlers.find(key);
        if (it == handlers.end()) {
            throw ParseError("config: unknown key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const Json::exception &e) {
            throw ParseError("config key '" + key + "': " + e.what());
        } catch (const ParseError &e) {
            throw ParseError("config key '" + key + "': " + e.what());
        } catch (const DomainError &e) {
            throw ParseError("config key '" + key + "': " + e.what());
        }
    }

    if (g_max || g_points) {
        if (doc.contains("g_values")) {
            throw ParseError("config: 'g_values' and 'g_max'/'g_points' are mutually exclusive");
        }
        cfg.sweep.g_values = experiment::symmetric_grid(g_max.value_or(0.3), g_points.value_or(13));
    }
    cfg.sweep.engine = parse_engine(engine, eta, balanced);
    return cfg;
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config file '" + path + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ParseError("config file '" + path + "': " + e.what());
    }
    return parse_run_config(doc);
}

RunConfig resolve_config(const Overrides &o) {
    RunConfig cfg = o.config_path ? load_run_config(*o.config_path) : RunConfig{};
    if (o.seed) {
        cfg.sweep.seed = *o.seed;
    }
    if (o.counts) {
        cfg.sweep.counts_per_setting = *o.counts;
        cfg.noisy = true;
    }
    if (o.engine || o.eta) {
        double eta = 1.0;
        bool balanced = true;
        std::string engine = "direct";
        if (const auto *p = std::get_if<experiment::PpbsEngine>(&cfg.sweep.engine)) {
            eta = p->eta;
            balanced = p->balanced;
            engine = "ppbs";
        }
        if (o.eta) {
            eta = *o.eta;
        }
        if (o.engine) {
            engine = *o.engine;
        }
        cfg.sweep.engine = parse_engine(engine, eta, balanced);
    }
    if (o.out_dir) {
        cfg.out_dir = *o.out_dir;
    }
    if (o.format) {
        cfg.format = parse_format(*o.format);
    }
    return cfg;
}

}  // namespace cheshire::cli
