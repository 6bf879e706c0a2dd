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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "entcrit/criteria.hpp"
#include "entcrit/scan.hpp"
#include "entcrit/states.hpp"

namespace entcrit {

/// One line of the reproduction table.
struct ReproductionRow {
    std::string name;
    std::string expected;
    double observed = 0.0;
    bool pass = false;
    std::string error;
};

namespace detail {

inline ReproductionRow guarded_row(std::string name, std::string expected,
                                   const std::function<void(ReproductionRow&)>& body) {
    ReproductionRow row{std::move(name), std::move(expected), 0.0, false, {}};
    try {
        body(row);
    } catch (const std::exception& e) {
        row.pass = false;
        row.error = e.what();
    }
    return row;
}

inline DensityMatrix corpus_state(std::uint64_t seed) {
    static constexpr Dims kDims[] = {{2, 2}, {2, 3}, {3, 3}};
    Rng pick(seed);
    const Dims dims = kDims[pick.integer(0, 2)];
    return random_density(dims, pick.integer(1, dims.total()), seed ^ 0x9e3779b97f4a7c15ULL);
}

}  // namespace detail

/// Reproduces the detection thresholds of the two worked examples and spot
/// checks the structural relations between the criteria. `samples` sets the
/// size of the random corpora.
inline std::vector<ReproductionRow> run_reproduction(const Tolerances& tol = {}, std::uint64_t seed = 2026,
                                                     int samples = 60) {
    std::vector<ReproductionRow> rows;
    const StateFamily singlet_family = noisy_singlet_family();
    const StateFamily tiles = tiles_family();

    rows.push_back(detail::guarded_row("noisy singlet: cross-norm onset", "0.292 +- 1e-3", [&](ReproductionRow& r) {
        r.observed = bisect_threshold(singlet_family, ScanCriterion::ccn, 0.0, 1.0, 1e-4, std::nullopt, tol).threshold;
        r.pass = std::abs(r.observed - 0.292) <= 1e-3;
    }));
    rows.push_back(detail::guarded_row("noisy singlet: LUR onset, signed Pauli LOOs", "0.250 +- 1e-3",
                                       [&](ReproductionRow& r) {
                                           const FixedLoos fixed = default_fixed_loos(singlet_family, tol);
                                           r.observed = bisect_threshold(singlet_family, ScanCriterion::lur_fixed, 0.0,
                                                                         1.0, 1e-4, fixed, tol)
                                                            .threshold;
                                           r.pass = std::abs(r.observed - 0.250) <= 1e-3;
                                       }));
    rows.push_back(detail::guarded_row("noisy singlet p=0.27: LUR detects, cross norm does not", "LUR value < 0",
                                       [&](ReproductionRow& r) {
                                           const DensityMatrix rho = noisy_singlet(0.27);
                                           const auto [a, b] = singlet_schmidt_loos();
                                           const CriterionReport lur = lur_ccn_value(rho, a, b, tol);
                                           r.observed = lur.value;
                                           r.pass = lur.detected && !ccn_check(rho, tol).detected;
                                       }));
    double tiles_onset = 0.0;
    rows.push_back(detail::guarded_row("tiles: cross-norm onset", "0.8897 +- 5e-4", [&](ReproductionRow& r) {
        tiles_onset = bisect_threshold(tiles, ScanCriterion::ccn, 0.5, 1.0, 1e-6, std::nullopt, tol).threshold;
        r.observed = tiles_onset;
        r.pass = std::abs(r.observed - 0.8897) <= 5e-4;
    }));
    rows.push_back(detail::guarded_row("tiles: LUR onset, LOOs fixed at the cross-norm onset", "0.8885 +- 5e-4",
                                       [&](ReproductionRow& r) {
                                           const FixedLoos fixed = default_fixed_loos(tiles, tol);
                                           r.observed =
                                               bisect_threshold(tiles, ScanCriterion::lur_fixed, 0.5, 1.0, 1e-6, fixed, tol)
                                                   .threshold;
                                           r.pass = std::abs(r.observed - 0.8885) <= 5e-4;
                                       }));
    rows.push_back(detail::guarded_row("tiles: bound entangled state is PPT", "min PT eigenvalue >= -1e-9",
                                       [&](ReproductionRow& r) {
                                           r.observed = ppt_check(tiles_rho_be(), tol).value;
                                           r.pass = r.observed >= -1e-9;
                                       }));
    rows.push_back(detail::guarded_row("noisy singlet p=1e-3: PPT detects", "min PT eigenvalue < -1e-9",
                                       [&](ReproductionRow& r) {
                                           const CriterionReport ppt = ppt_check(noisy_singlet(1e-3), tol);
                                           r.observed = ppt.value;
                                           r.pass = ppt.value < -1e-9 && ppt.detected;
                                       }));
    rows.push_back(detail::guarded_row("cross norm detected implies LUR detected", "0 counterexamples",
                                       [&](ReproductionRow& r) {
                                           int counterexamples = 0;
                                           for (int i = 0; i < samples; ++i) {
                                               const DensityMatrix rho = detail::corpus_state(seed + static_cast<std::uint64_t>(i));
                                               if (ccn_check(rho, tol).detected && !lur_detect(rho, tol).detected) {
                                                   ++counterexamples;
                                               }
                                           }
                                           r.observed = counterexamples;
                                           r.pass = counterexamples == 0;
                                       }));
    rows.push_back(detail::guarded_row("separable states are never detected", "0 detections", [&](ReproductionRow& r) {
        int detections = 0;
        for (int i = 0; i < samples; ++i) {
            const Index da = 2 + i % 2;
            const Index db = 2 + (i / 2) % 2;
            const DensityMatrix rho = random_separable(da, db, 1 + i % 4, seed + 1000 + static_cast<std::uint64_t>(i));
            detections += ppt_check(rho, tol).detected + ccn_check(rho, tol).detected + lur_detect(rho, tol).detected;
        }
        r.observed = detections;
        r.pass = detections == 0;
    }));
    rows.push_back(detail::guarded_row("witness: Schmidt form equals realignment form", "max deviation < 1e-9",
                                       [&](ReproductionRow& r) {
                                           double worst = 0.0;
                                           for (int i = 0; i < std::max(1, samples / 3); ++i) {
                                               const DensityMatrix rho = detail::corpus_state(seed + 5000 + static_cast<std::uint64_t>(i));
                                               const RealignWitnessForms forms = realign_witness_forms(rho);
                                               const ComplexMatrix w = ccn_witness(rho, tol).mat;
                                               worst = std::max({worst, max_abs(w - forms.direct), max_abs(w - forms.transposed)});
                                           }
                                           r.observed = worst;
                                           r.pass = worst < 1e-9;
                                       }));
    rows.push_back(detail::guarded_row("singlet: sum of Schmidt coefficients", "2 +- 1e-10", [&](ReproductionRow& r) {
        r.observed = ccn_check(singlet(), tol).value;
        r.pass = std::abs(r.observed - 2.0) <= 1e-10;
    }));
    return rows;
}

}  // namespace entcrit
