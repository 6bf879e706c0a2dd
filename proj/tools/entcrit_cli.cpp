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

// entcrit: command-line front end.
//
//   entcrit check --state FILE --criteria ppt,ccn,lur
//   entcrit scan --family tiles --criterion ccn [--bracket LO HI] [--tol T]
//   entcrit demo [--json]
//
// Exit codes: 0 success, 1 criteria error or demo failure, 2 input error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entcrit/entcrit.hpp"
#include "entcrit/io.hpp"
#include "entcrit/reproduction.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriteria = 1;
constexpr int kExitInput = 2;

struct GlobalOptions {
    std::uint64_t seed = 2026;
    double tol_detect = entcrit::Tolerances{}.detect;
    bool no_meta = false;

    [[nodiscard]] entcrit::Tolerances tolerances() const {
        entcrit::Tolerances tol;
        tol.detect = tol_detect;
        return tol;
    }
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void attach_meta(nlohmann::json& doc, const GlobalOptions& opts) {
    if (opts.no_meta) return;
    doc["meta"] = entcrit::meta_json(opts.seed, opts.tolerances());
    doc["meta"]["timestamp"] = utc_timestamp();
}

void print(const nlohmann::json& doc) { std::cout << doc.dump(2) << "\n"; }

int input_error(const std::string& message) {
    std::cerr << "entcrit: input error: " << message << "\n";
    return kExitInput;
}

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

entcrit::CriterionReport run_criterion(const std::string& name, const entcrit::DensityMatrix& rho,
                                       const entcrit::Tolerances& tol) {
    using namespace entcrit;
    if (name == "ppt") return ppt_check(rho, tol);
    if (name == "ccn") return ccn_check(rho, tol);
    if (name == "lur") return lur_detect(rho, tol);
    if (name == "witness") return witness_check(ccn_witness(rho, tol), rho, tol);
    if (name == "nonlinear") {
        const Witness w = ccn_witness(rho, tol);
        return nl_example_unitary(w, identity(rho.dims().a), rho, tol);
    }
    throw std::invalid_argument("unknown criterion: " + name);
}

const std::vector<std::string> kCheckCriteria = {"ppt", "ccn", "lur", "witness", "nonlinear"};

int cmd_check(const std::string& state_path, const std::string& criteria, const GlobalOptions& opts) {
    const entcrit::Tolerances tol = opts.tolerances();
    std::vector<std::string> names = split_list(criteria);
    if (names.size() == 1 && names[0] == "all") names = kCheckCriteria;
    if (names.empty()) return input_error("no criteria requested");
    for (const auto& name : names) {
        if (std::find(kCheckCriteria.begin(), kCheckCriteria.end(), name) == kCheckCriteria.end()) {
            return input_error("unknown criterion '" + name + "'");
        }
    }

    std::optional<entcrit::DensityMatrix> rho;
    try {
        rho = entcrit::read_state_file(state_path, tol);
    } catch (const entcrit::InvalidStateError& e) {
        nlohmann::json doc = {{"error", "invalid density matrix"}, {"validity", entcrit::to_json(e.report())}};
        print(doc);
        return input_error(e.what());
    } catch (const std::exception& e) {
        return input_error(e.what());
    }

    nlohmann::json doc;
    doc["reports"] = nlohmann::json::array();
    int status = kExitOk;
    for (const auto& name : names) {
        try {
            doc["reports"].push_back(entcrit::to_json(run_criterion(name, *rho, tol)));
        } catch (const std::exception& e) {
            doc["reports"].push_back({{"criterion", name}, {"error", e.what()}});
            status = kExitCriteria;
        }
    }
    attach_meta(doc, opts);
    print(doc);
    return status;
}

int cmd_scan(const std::string& family_name, const std::string& criterion_name, const std::vector<double>& bracket,
             double tol_p, const GlobalOptions& opts) {
    const auto family = entcrit::family_by_name(family_name);
    if (!family) return input_error("unknown family '" + family_name + "'");
    const auto criterion = entcrit::parse_scan_criterion(criterion_name);
    if (!criterion) return input_error("unknown criterion '" + criterion_name + "'");

    const entcrit::Tolerances tol = opts.tolerances();
    try {
        std::optional<entcrit::FixedLoos> fixed;
        if (*criterion == entcrit::ScanCriterion::lur_fixed) fixed = entcrit::default_fixed_loos(*family, tol);
        const double lo = bracket.empty() ? family->p_min : bracket[0];
        const double hi = bracket.empty() ? family->p_max : bracket[1];
        nlohmann::json doc = entcrit::to_json(entcrit::bisect_threshold(*family, *criterion, lo, hi, tol_p, fixed, tol));
        attach_meta(doc, opts);
        print(doc);
    } catch (const std::invalid_argument& e) {
        return input_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "entcrit: scan failed: " << e.what() << "\n";
        return kExitCriteria;
    }
    return kExitOk;
}

int cmd_demo(bool json, const GlobalOptions& opts) {
    const auto rows = entcrit::run_reproduction(opts.tolerances(), opts.seed);
    bool all_pass = true;
    for (const auto& row : rows) all_pass = all_pass && row.pass;

    if (json) {
        nlohmann::json doc;
        doc["rows"] = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json r = {{"name", row.name}, {"expected", row.expected}, {"observed", row.observed}, {"pass", row.pass}};
            if (!row.error.empty()) r["error"] = row.error;
            doc["rows"].push_back(std::move(r));
        }
        doc["all_pass"] = all_pass;
        attach_meta(doc, opts);
        print(doc);
    } else {
        for (const auto& row : rows) {
            std::cout << (row.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(56) << row.name << " expected "
                      << std::setw(28) << row.expected << " observed " << std::setprecision(10) << row.observed;
            if (!row.error.empty()) std::cout << "  (" << row.error << ")";
            std::cout << "\n";
        }
        std::cout << (all_pass ? "all rows pass" : "some rows FAILED") << "\n";
    }
    return all_pass ? kExitOk : kExitCriteria;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bipartite entanglement criteria: PPT, cross norm, local uncertainty relations, witnesses"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    app.add_option("--seed", opts.seed, "Seed for random corpora")->capture_default_str();
    app.add_option("--tol-detect", opts.tol_detect, "Detection margin for every criterion")->capture_default_str();
    app.add_flag("--no-meta", opts.no_meta, "Omit the provenance block (makes output byte-stable)");

    std::string state_path;
    std::string criteria = "ppt,ccn,lur";
    auto* check = app.add_subcommand("check", "Run criteria on a state file");
    check->add_option("--state", state_path, "State JSON file")->required();
    check->add_option("--criteria", criteria, "Comma-separated list: ppt,ccn,lur,witness,nonlinear or all")
        ->capture_default_str();

    std::string family;
    std::string criterion;
    std::vector<double> bracket;
    double tol_p = 1e-4;
    auto* scan = app.add_subcommand("scan", "Bisect the detection onset along a state family");
    scan->add_option("--family", family, "noisy_singlet | tiles")->required();
    scan->add_option("--criterion", criterion, "ppt | ccn | lur | lur_fixed")->required();
    scan->add_option("--bracket", bracket, "Parameter bracket LO HI")->expected(2);
    scan->add_option("--tol", tol_p, "Final bracket width")->capture_default_str();

    bool json = false;
    auto* demo = app.add_subcommand("demo", "Reproduce the reference thresholds and print a pass/fail table");
    demo->add_flag("--json", json, "Emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (check->parsed()) return cmd_check(state_path, criteria, opts);
    if (scan->parsed()) return cmd_scan(family, criterion, bracket, tol_p, opts);
    if (demo->parsed()) return cmd_demo(json, opts);
    return kExitInput;
}
