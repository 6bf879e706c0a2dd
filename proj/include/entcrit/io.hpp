// Copyright 2026 The entcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "entcrit/criteria.hpp"
#include "entcrit/operator_algebra.hpp"
#include "entcrit/scan.hpp"

namespace entcrit {

inline constexpr std::string_view kVersion = "0.1.0";

/// Malformed input document (bad JSON, wrong schema, unreadable file).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// State file schema:
//   {"dim_a": int, "dim_b": int, "matrix": [[[re, im], ...], ...]}
// row-major, (d_A d_B) rows of (d_A d_B) entries.

inline DensityMatrix state_from_json(const nlohmann::json& doc, const Tolerances& tol = {}) {
    if (!doc.is_object()) throw InputError("state file: top level must be an object");
    for (const char* key : {"dim_a", "dim_b", "matrix"}) {
        if (!doc.contains(key)) throw InputError(std::string("state file: missing key \"") + key + "\"");
    }
    if (!doc["dim_a"].is_number_integer() || !doc["dim_b"].is_number_integer()) {
        throw InputError("state file: dim_a and dim_b must be integers");
    }
    const Dims dims{doc["dim_a"].get<Index>(), doc["dim_b"].get<Index>()};
    if (dims.a < 1 || dims.b < 1) throw InputError("state file: dimensions must be positive");

    const auto& rows = doc["matrix"];
    const Index n = dims.total();
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
        throw InputError("state file: matrix must have d_A*d_B = " + std::to_string(n) + " rows");
    }
    ComplexMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw InputError("state file: row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        }
        for (Index j = 0; j < n; ++j) {
            const auto& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
                throw InputError("state file: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") must be a [re, im] pair");
            }
            m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return {std::move(m), dims, tol};
}

inline DensityMatrix read_state_file(const std::string& path, const Tolerances& tol = {}) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open state file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("state file: ") + e.what());
    }
    return state_from_json(doc, tol);
}

inline nlohmann::json state_to_json(const ComplexMatrix& m, Dims dims) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dim_a", dims.a}, {"dim_b", dims.b}, {"matrix", std::move(rows)}};
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) { return state_to_json(rho.matrix(), rho.dims()); }

inline nlohmann::json to_json(const CriterionReport& report) {
    nlohmann::json details = nlohmann::json::object();
    for (const auto& [key, value] : report.details) details[key] = value;
    return {{"criterion", std::string(to_string(report.criterion))},
            {"value", report.value},
            {"detected", report.detected},
            {"details", std::move(details)}};
}

inline nlohmann::json to_json(const ScanResult& scan) {
    return {{"family", scan.family},
            {"criterion", scan.criterion},
            {"threshold", scan.threshold},
            {"bracket", {scan.lo, scan.hi}},
            {"tolerance", scan.tolerance},
            {"evaluations", scan.evaluations},
            {"monotonicity_warning", scan.monotonicity_warning}};
}

inline nlohmann::json to_json(const Tolerances& tol) {
    return {{"herm", tol.herm}, {"trace", tol.trace}, {"psd", tol.psd}, {"eig", tol.eig}, {"detect", tol.detect}};
}

inline nlohmann::json to_json(const DensityValidity& v) {
    return {{"hermiticity_defect", v.hermiticity_defect},
            {"trace_defect", v.trace_defect},
            {"min_eigenvalue", v.min_eigenvalue},
            {"valid", v.valid}};
}

/// Provenance block attached to every report document.
inline nlohmann::json meta_json(std::uint64_t seed, const Tolerances& tol) {
    return {{"toolkit_version", std::string(kVersion)}, {"seed", seed}, {"tolerances", to_json(tol)}};
}

}  // namespace entcrit
