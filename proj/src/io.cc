// Copyright 2026 The twinbeam Authors
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

#include "twinbeam/io.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace twinbeam {

namespace {

std::vector<std::vector<std::string>> parse_csv(std::string_view csv, std::string_view expected_header) {
    std::istringstream in{std::string(csv)};
    std::string line;
    if (!std::getline(in, line) || line != expected_header) {
        throw std::invalid_argument("CSV header must be '" + std::string(expected_header) + "'");
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) {
            fields.push_back(field);
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

double json_bound(const nlohmann::json &j, double infinite) {
    return j.is_null() ? infinite : j.get<double>();
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.14e", value);
    return buf;
}

nlohmann::json state_to_json(const FockState &s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[occ, amp] : s.terms()) {
        terms.push_back({{"occ", occ.counts}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return {{"terms", terms}};
}

FockState state_from_json(const nlohmann::json &j) {
    std::vector<FockState::Term> terms;
    for (const auto &t : j.at("terms")) {
        const auto &occ = t.at("occ");
        if (!occ.is_array() || occ.size() != 4) {
            throw std::invalid_argument("occupation must list four photon counts");
        }
        Occupation o;
        for (std::size_t i = 0; i < 4; i++) {
            auto n = occ[i].get<long long>();
            if (n < 0) {
                throw std::invalid_argument("photon counts must be non-negative");
            }
            o.counts[i] = static_cast<std::uint32_t>(n);
        }
        terms.push_back({o, Complex{t.at("re").get<double>(), t.at("im").get<double>()}});
    }
    return FockState::from_terms(terms);
}

nlohmann::json windows_to_json(const WindowTable &w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &win : w.windows()) {
        nlohmann::json entry{{"class", win.class_id}};
        entry["lower"] = std::isinf(win.lower) ? nlohmann::json(nullptr) : nlohmann::json(win.lower);
        entry["upper"] = std::isinf(win.upper) ? nlohmann::json(nullptr) : nlohmann::json(win.upper);
        arr.push_back(entry);
    }
    return {{"windows", arr}};
}

WindowTable windows_from_json(const nlohmann::json &j) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<WindowTable::Window> windows;
    for (const auto &entry : j.at("windows")) {
        windows.push_back(
            {entry.at("class").get<int>(), json_bound(entry.at("lower"), -inf), json_bound(entry.at("upper"), inf)});
    }
    return WindowTable(std::move(windows));
}

std::string records_to_csv(const std::vector<IterationRecord> &records) {
    std::string out = "i,c_i,P_i,cumP\n";
    for (const auto &r : records) {
        out += std::to_string(r.i) + ',' + format_double(r.c) + ',' + format_double(r.p) + ',' +
               format_double(r.cumulative_p) + '\n';
    }
    return out;
}

std::vector<IterationRecord> records_from_csv(std::string_view csv) {
    std::vector<IterationRecord> out;
    for (const auto &row : parse_csv(csv, "i,c_i,P_i,cumP")) {
        if (row.size() != 4) {
            throw std::invalid_argument("iteration rows need four fields");
        }
        out.push_back({std::stoi(row[0]), std::stod(row[1]), std::stod(row[2]), std::stod(row[3])});
    }
    return out;
}

nlohmann::json records_to_json(const std::vector<IterationRecord> &records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : records) {
        arr.push_back({{"i", r.i}, {"c_i", r.c}, {"P_i", r.p}, {"cumP", r.cumulative_p}});
    }
    return arr;
}

std::vector<IterationRecord> records_from_json(const nlohmann::json &j) {
    std::vector<IterationRecord> out;
    for (const auto &r : j) {
        out.push_back({r.at("i").get<int>(), r.at("c_i").get<double>(), r.at("P_i").get<double>(),
                       r.at("cumP").get<double>()});
    }
    return out;
}

std::string distribution_to_csv(const PairDistribution &d) {
    std::string out = "n,p_n\n";
    for (std::size_t n = 0; n < d.probabilities.size(); n++) {
        out += std::to_string(n) + ',' + format_double(d.probabilities[n]) + '\n';
    }
    return out;
}

std::vector<double> distribution_from_csv(std::string_view csv) {
    std::vector<double> out;
    for (const auto &row : parse_csv(csv, "n,p_n")) {
        if (row.size() != 2 || std::stoul(row[0]) != out.size()) {
            throw std::invalid_argument("distribution rows must be 'n,p_n' with n = 0, 1, 2, ...");
        }
        out.push_back(std::stod(row[1]));
    }
    return out;
}

std::string samples_to_csv(const std::vector<std::pair<double, int>> &samples) {
    std::string out = "x,declared_class\n";
    for (const auto &[x, cls] : samples) {
        out += format_double(x) + ',' + std::to_string(cls) + '\n';
    }
    return out;
}

std::vector<std::pair<double, int>> samples_from_csv(std::string_view csv) {
    std::vector<std::pair<double, int>> out;
    for (const auto &row : parse_csv(csv, "x,declared_class")) {
        if (row.size() != 2) {
            throw std::invalid_argument("sample rows need two fields");
        }
        out.emplace_back(std::stod(row[0]), std::stoi(row[1]));
    }
    return out;
}

}  // namespace twinbeam
