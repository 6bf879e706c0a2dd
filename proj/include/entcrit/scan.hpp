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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entcrit/criteria.hpp"
#include "entcrit/loo_basis.hpp"
#include "entcrit/schmidt_realign.hpp"
#include "entcrit/states.hpp"

namespace entcrit {

/// Criteria a threshold scan can bisect on. `lur` recomputes the Schmidt
/// operators for every state; `lur_fixed` pins them (see FixedLoos).
enum class ScanCriterion { ppt, ccn, lur, lur_fixed };

inline std::string_view to_string(ScanCriterion c) {
    switch (c) {
        case ScanCriterion::ppt: return "ppt";
        case ScanCriterion::ccn: return "ccn";
        case ScanCriterion::lur: return "lur";
        case ScanCriterion::lur_fixed: return "lur_fixed";
    }
    return "unknown";
}

inline std::optional<ScanCriterion> parse_scan_criterion(std::string_view name) {
    for (auto c : {ScanCriterion::ppt, ScanCriterion::ccn, ScanCriterion::lur, ScanCriterion::lur_fixed}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

/// Operator sets held fixed across a lur_fixed scan.
struct FixedLoos {
    OperatorList a;
    OperatorList b;
};

struct ScanResult {
    std::string family;
    std::string criterion;
    double threshold = 0.0;  ///< midpoint of the final bracket
    double lo = 0.0;         ///< last parameter found not detected
    double hi = 0.0;         ///< last parameter found detected
    double tolerance = 0.0;
    int evaluations = 0;
    bool monotonicity_warning = false;
};

inline bool scan_detects(ScanCriterion criterion, const DensityMatrix& rho, const std::optional<FixedLoos>& fixed,
                         const Tolerances& tol) {
    switch (criterion) {
        case ScanCriterion::ppt: return ppt_check(rho, tol).detected;
        case ScanCriterion::ccn: return ccn_check(rho, tol).detected;
        case ScanCriterion::lur: return lur_detect(rho, tol).detected;
        case ScanCriterion::lur_fixed:
            if (!fixed) throw std::invalid_argument("lur_fixed scan needs a fixed operator set");
            return lur_ccn_value(rho, fixed->a, fixed->b, tol).detected;
    }
    return false;
}

/// Bisects the detection onset of `criterion` along `family` to a bracket of
/// width <= tol_p. Detection is assumed monotone in p; 16 uniform samples over
/// the bracket check that, and a violation only raises monotonicity_warning.
inline ScanResult bisect_threshold(const StateFamily& family, ScanCriterion criterion, double lo, double hi,
                                   double tol_p, const std::optional<FixedLoos>& fixed = std::nullopt,
                                   const Tolerances& tol = {}) {
    if (!(tol_p > 0.0)) throw std::invalid_argument("bisect_threshold: tolerance must be positive");
    if (!(lo < hi) || lo < family.p_min || hi > family.p_max) {
        throw std::invalid_argument("bisect_threshold: bracket must satisfy p_min <= lo < hi <= p_max");
    }
    ScanResult result;
    result.family = family.name;
    result.criterion = std::string(to_string(criterion));
    result.tolerance = tol_p;

    const auto detects = [&](double p) {
        ++result.evaluations;
        return scan_detects(criterion, family.generator(p), fixed, tol);
    };
    if (detects(lo)) throw std::invalid_argument("bisect_threshold: state at the lower bracket end is already detected");
    if (!detects(hi)) throw std::invalid_argument("bisect_threshold: state at the upper bracket end is not detected");

    constexpr int kSamples = 16;
    bool seen_detected = false;
    for (int i = 0; i < kSamples; ++i) {
        const bool hit = detects(lo + (hi - lo) * i / (kSamples - 1));
        if (seen_detected && !hit) result.monotonicity_warning = true;
        seen_detected = seen_detected || hit;
    }

    while (hi - lo > tol_p) {
        const double mid = 0.5 * (lo + hi);
        (detects(mid) ? hi : lo) = mid;
    }
    result.lo = lo;
    result.hi = hi;
    result.threshold = 0.5 * (lo + hi);
    return result;
}

inline std::vector<std::string> family_names() { return {"noisy_singlet", "tiles"}; }

inline std::optional<StateFamily> family_by_name(std::string_view name) {
    if (name == "noisy_singlet") return noisy_singlet_family();
    if (name == "tiles") return tiles_family();
    return std::nullopt;
}

/// Default operators for a lur_fixed scan. For the noisy singlet these are the
/// signed Pauli sets (the singlet's own Schmidt factors); for any other family,
/// the Schmidt factors of the state at the family's cross-norm onset.
inline FixedLoos default_fixed_loos(const StateFamily& family, const Tolerances& tol = {}) {
    if (family.name == "noisy_singlet") {
        auto [a, b] = singlet_schmidt_loos();
        return {a.ops(), b.ops()};
    }
    // Start the onset search where the family is still undetected.
    double lo = family.p_min;
    const double hi = family.p_max;
    if (scan_detects(ScanCriterion::ccn, family.generator(lo), std::nullopt, tol)) {
        throw std::invalid_argument("default_fixed_loos: family is cross-norm detected at p_min");
    }
    const ScanResult onset = bisect_threshold(family, ScanCriterion::ccn, lo, hi, 1e-9, std::nullopt, tol);
    const LurOperators ops = lur_operators(operator_schmidt(family.generator(onset.threshold), tol.herm));
    return {ops.ops_a, ops.ops_b};
}

}  // namespace entcrit
