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

#include "cheshire/sweep_io.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <vector>

#include "json.hpp"

namespace cheshire {

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

namespace experiment {

namespace {

uint64_t parse_count(std::string_view text) {
    uint64_t value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("not a count: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

void write_sweep_csv(const SweepResult &result, std::ostream &out) {
    out << kSweepCsvHeader << "\n";
    for (const auto &p : result.points) {
        out << format_double(p.g) << "," << format_double(p.theta_a_deg) << "," << basis_name(p.basis) << ","
            << p.n_plus << "," << p.n_minus << "," << (p.estimate ? format_double(*p.estimate) : "") << ","
            << format_double(p.std_error) << "\n";
    }
}

SweepResult read_sweep_csv(std::istream &in) {
    std::string line;
    size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("sweep CSV is empty");
    }
    line_no++;
    if (trim_cr(line) != kSweepCsvHeader) {
        throw ParseError("sweep CSV line 1: unexpected header '" + line + "'");
    }
    SweepResult result;
    while (std::getline(in, line)) {
        line_no++;
        auto row = trim_cr(line);
        if (row.empty()) {
            continue;
        }
        auto fields = split(row, ',');
        try {
            if (fields.size() != 7) {
                throw ParseError("expected 7 fields, found " + std::to_string(fields.size()));
            }
            SweepPoint p;
            p.g = parse_double(fields[0]);
            p.theta_a_deg = parse_double(fields[1]);
            try {
                p.basis = parse_basis(fields[2]);
            } catch (const DomainError &e) {
                throw ParseError(e.what());
            }
            p.n_plus = parse_count(fields[3]);
            p.n_minus = parse_count(fields[4]);
            if (!fields[5].empty()) {
                p.estimate = parse_double(fields[5]);
            }
            p.std_error = parse_double(fields[6]);
            result.points.push_back(p);
        } catch (const ParseError &e) {
            throw ParseError("sweep CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

void write_sweep_json(const SweepResult &result, std::ostream &out) {
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto &p : result.points) {
        nlohmann::ordered_json row;
        row["g_rad"] = p.g;
        row["theta_a_deg"] = p.theta_a_deg;
        row["basis"] = std::string(basis_name(p.basis));
        row["n_plus"] = p.n_plus;
        row["n_minus"] = p.n_minus;
        row["estimate"] = p.estimate ? nlohmann::ordered_json(*p.estimate) : nlohmann::ordered_json(nullptr);
        row["stderr"] = p.std_error;
        points.push_back(std::move(row));
    }
    nlohmann::ordered_json doc;
    doc["schema"] = kSweepJsonSchema;
    doc["points"] = std::move(points);
    out << doc.dump(2) << "\n";
}

SweepResult read_sweep_json(std::istream &in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("sweep JSON: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != kSweepJsonSchema) {
            throw ParseError("sweep JSON: unsupported schema '" + doc.at("schema").get<std::string>() + "'");
        }
        SweepResult result;
        size_t k = 0;
        for (const auto &row : doc.at("points")) {
            try {
                SweepPoint p;
                p.g = row.at("g_rad").get<double>();
                p.theta_a_deg = row.at("theta_a_deg").get<double>();
                p.basis = parse_basis(row.at("basis").get<std::string>());
                p.n_plus = row.at("n_plus").get<uint64_t>();
                p.n_minus = row.at("n_minus").get<uint64_t>();
                if (!row.at("estimate").is_null()) {
                    p.estimate = row.at("estimate").get<double>();
                }
                p.std_error = row.at("stderr").get<double>();
                result.points.push_back(p);
            } catch (const std::exception &e) {
                throw ParseError("sweep JSON point " + std::to_string(k) + ": " + e.what());
            }
            k++;
        }
        return result;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("sweep JSON: ") + e.what());
    }
}

}  // namespace experiment
}  // namespace cheshire
