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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entcrit/operator_algebra.hpp"

namespace entcrit {

using OperatorList = std::vector<ComplexMatrix>;

/// Defects measured by validate_loos. A set is a valid LOO basis when every
/// defect is within tolerance.
struct LOOValidity {
    double orthonormality_defect = 0.0;  ///< max |Tr(G_k G_l) - delta_kl|
    double hermiticity_defect = 0.0;
    double square_sum_defect = 0.0;      ///< max-norm of sum_k G_k^2 - d*1
    double completeness_defect = 0.0;    ///< max-norm of sum_k Tr(G_k) G_k - 1
    bool valid = false;
};

inline constexpr double kLooOrthTolerance = 1e-10;
inline constexpr double kLooSumTolerance = 1e-9;

/// Throws DimensionError unless `ops` holds d^2 matrices of size d x d.
inline LOOValidity validate_loos(const OperatorList& ops, Index d, double tol_orth = kLooOrthTolerance) {
    if (d < 1 || static_cast<Index>(ops.size()) != d * d) {
        throw DimensionError("validate_loos: expected " + std::to_string(d * d) + " operators, got " +
                             std::to_string(ops.size()));
    }
    for (const auto& g : ops) {
        if (g.rows() != d || g.cols() != d) {
            throw DimensionError("validate_loos: operator of shape " + detail::shape_string(g) +
                                 " in a basis of dimension " + std::to_string(d));
        }
    }

    LOOValidity report;
    ComplexMatrix squares = ComplexMatrix::Zero(d, d);
    ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < ops.size(); ++k) {
        report.hermiticity_defect = std::max(report.hermiticity_defect, hermiticity_defect(ops[k]));
        for (std::size_t l = k; l < ops.size(); ++l) {
            const double target = (k == l) ? 1.0 : 0.0;
            const double defect = std::abs(trace_product(ops[k], ops[l]) - Complex(target, 0.0));
            report.orthonormality_defect = std::max(report.orthonormality_defect, defect);
        }
        squares += ops[k] * ops[k];
        completeness += ops[k].trace() * ops[k];
    }
    report.square_sum_defect = max_abs(squares - static_cast<double>(d) * identity(d));
    report.completeness_defect = max_abs(completeness - identity(d));
    report.valid = report.orthonormality_defect <= tol_orth && report.hermiticity_defect <= tol_orth &&
                   report.square_sum_defect <= kLooSumTolerance && report.completeness_defect <= kLooSumTolerance;
    return report;
}

/// An ordered set of d^2 Hermitian operators, orthonormal in the
/// Hilbert-Schmidt inner product. Construction validates the set.
class LOOBasis {
  public:
    LOOBasis(Index dim, OperatorList ops) : dim_(dim), ops_(std::move(ops)) {
        const LOOValidity report = validate_loos(ops_, dim_);
        if (!report.valid) {
            throw std::invalid_argument("LOOBasis: operators are not local orthogonal observables (orthonormality defect " +
                                        std::to_string(report.orthonormality_defect) + ")");
        }
    }

    [[nodiscard]] Index dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return ops_.size(); }
    [[nodiscard]] const OperatorList& ops() const { return ops_; }
    [[nodiscard]] const ComplexMatrix& operator[](std::size_t k) const { return ops_[k]; }

  private:
    Index dim_;
    OperatorList ops_;
};

inline LOOValidity validate_loos(const LOOBasis& basis) { return validate_loos(basis.ops(), basis.dim()); }

/// The explicit d^2-element basis: symmetric pair operators
/// (|m><n| + |n><m|)/sqrt2, then antisymmetric (i|m><n| - i|n><m|)/sqrt2,
/// both for m < n in lexicographic order, then the diagonal projectors |m><m|.
inline LOOBasis canonical_loos(Index d) {
    if (d < 2) throw std::invalid_argument("canonical_loos: dimension must be at least 2");
    const double s = 1.0 / std::sqrt(2.0);
    OperatorList ops;
    ops.reserve(static_cast<std::size_t>(d * d));
    for (Index m = 0; m < d; ++m) {
        for (Index n = m + 1; n < d; ++n) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(m, n) = s;
            g(n, m) = s;
            ops.push_back(std::move(g));
        }
    }
    for (Index m = 0; m < d; ++m) {
        for (Index n = m + 1; n < d; ++n) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(m, n) = Complex(0.0, s);
            g(n, m) = Complex(0.0, -s);
            ops.push_back(std::move(g));
        }
    }
    for (Index m = 0; m < d; ++m) {
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        g(m, m) = 1.0;
        ops.push_back(std::move(g));
    }
    return {d, std::move(ops)};
}

/// G'_l = sum_k O[l,k] G_k for a real orthogonal O.
inline LOOBasis transform_loos(const LOOBasis& basis, const RealMatrix& o) {
    const auto n = static_cast<Index>(basis.size());
    if (o.rows() != n || o.cols() != n) {
        throw DimensionError("transform_loos: orthogonal matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if ((o * o.transpose() - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("transform_loos: matrix is not orthogonal");
    }
    OperatorList ops(basis.size(), ComplexMatrix::Zero(basis.dim(), basis.dim()));
    for (Index l = 0; l < n; ++l) {
        for (Index k = 0; k < n; ++k) {
            ops[static_cast<std::size_t>(l)] += o(l, k) * basis[static_cast<std::size_t>(k)];
        }
    }
    return {basis.dim(), std::move(ops)};
}

/// Extends k <= d^2 orthonormal Hermitian operators to a full LOO basis.
///
/// Gram-Schmidt in the real d^2-dimensional space of Hermitian matrices,
/// seeded with canonical_loos(d). The input operators come first, unchanged.
inline LOOBasis complete_loos(const OperatorList& partial, Index d, double tol_orth = kLooOrthTolerance) {
    if (d < 2) throw std::invalid_argument("complete_loos: dimension must be at least 2");
    const auto full = static_cast<std::size_t>(d * d);
    if (partial.size() > full) {
        throw std::invalid_argument("complete_loos: " + std::to_string(partial.size()) +
                                    " operators exceed the d^2 = " + std::to_string(full) + " limit");
    }
    for (std::size_t k = 0; k < partial.size(); ++k) {
        if (partial[k].rows() != d || partial[k].cols() != d) {
            throw DimensionError("complete_loos: operator shape " + detail::shape_string(partial[k]) +
                                 " does not match dimension " + std::to_string(d));
        }
        if (hermiticity_defect(partial[k]) > tol_orth) {
            throw std::invalid_argument("complete_loos: input operator is not Hermitian");
        }
        for (std::size_t l = 0; l <= k; ++l) {
            const double target = (k == l) ? 1.0 : 0.0;
            if (std::abs(trace_product(partial[k], partial[l]) - Complex(target, 0.0)) > tol_orth) {
                throw std::invalid_argument("complete_loos: input operators are not orthonormal");
            }
        }
    }

    // Real coordinates against the canonical basis; the HS inner product of
    // two Hermitian matrices is the dot product of their coordinates.
    const LOOBasis seed = canonical_loos(d);
    const auto coords = [&](const ComplexMatrix& h) {
        RealVector c(static_cast<Index>(full));
        for (std::size_t j = 0; j < full; ++j) c(static_cast<Index>(j)) = trace_product(seed[j], h).real();
        return c;
    };

    std::vector<RealVector> frame;
    frame.reserve(full);
    for (const auto& g : partial) frame.push_back(coords(g));

    OperatorList ops = partial;
    for (std::size_t j = 0; j < full && ops.size() < full; ++j) {
        RealVector v = RealVector::Unit(static_cast<Index>(full), static_cast<Index>(j));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& f : frame) v -= f.dot(v) * f;
        }
        const double norm = v.norm();
        if (norm < 1e-8) continue;
        v /= norm;
        frame.push_back(v);
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        for (std::size_t i = 0; i < full; ++i) g += v(static_cast<Index>(i)) * seed[i];
        ops.push_back(0.5 * (g + g.adjoint()));
    }
    return {d, std::move(ops)};
}

/// The signed Pauli sets {-sx, -sy, -sz, 1}/sqrt2 (A side) and
/// {sx, sy, sz, 1}/sqrt2 (B side): the operator Schmidt factors of the singlet.
inline std::pair<LOOBasis, LOOBasis> singlet_schmidt_loos() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    const ComplexMatrix id = identity(2);
    OperatorList a{-s * sx, -s * sy, -s * sz, s * id};
    OperatorList b{s * sx, s * sy, s * sz, s * id};
    return {LOOBasis(2, std::move(a)), LOOBasis(2, std::move(b))};
}

}  // namespace entcrit
