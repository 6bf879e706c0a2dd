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

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entcrit/loo_basis.hpp"
#include "entcrit/operator_algebra.hpp"
#include "entcrit/schmidt_realign.hpp"

namespace entcrit {

enum class CriterionKind { ppt, ccn, lur_ccn, lur_generic, witness, nonlinear };

inline std::string_view to_string(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::ppt: return "ppt";
        case CriterionKind::ccn: return "ccn";
        case CriterionKind::lur_ccn: return "lur_ccn";
        case CriterionKind::lur_generic: return "lur_generic";
        case CriterionKind::witness: return "witness";
        case CriterionKind::nonlinear: return "nonlinear";
    }
    return "unknown";
}

/// Outcome of one criterion on one state. `detected` means the state was
/// certified entangled: the value crossed its threshold by more than tol.detect.
struct CriterionReport {
    CriterionKind criterion = CriterionKind::ppt;
    double value = 0.0;
    bool detected = false;
    std::map<std::string, double> details;
};

/// A Hermitian test operator. When built from an operator Schmidt
/// decomposition, ops_a/ops_b hold the factors it was assembled from.
struct Witness {
    Dims dims;
    ComplexMatrix mat;
    std::string origin;
    OperatorList ops_a;
    OperatorList ops_b;
};

// Detection is a strict inequality beyond tol.detect, so boundary states
// (a product state with sum(lambda) = 1) never flip on rounding.
inline bool below(double value, double threshold, const Tolerances& tol) { return value < threshold - tol.detect; }
inline bool above(double value, double threshold, const Tolerances& tol) { return value > threshold + tol.detect; }

/// Minimum eigenvalue of the partial transpose; negative certifies entanglement.
inline CriterionReport ppt_check(const DensityMatrix& rho, const Tolerances& tol = {}) {
    const RealVector spectrum = eigenvalues_hermitian(partial_transpose(rho), tol.herm);
    CriterionReport report;
    report.criterion = CriterionKind::ppt;
    report.value = spectrum(0);
    report.detected = below(report.value, 0.0, tol);
    report.details["min_eigenvalue"] = spectrum(0);
    report.details["max_eigenvalue"] = spectrum(spectrum.size() - 1);
    return report;
}

/// Cross norm: the sum of operator Schmidt coefficients; above one certifies entanglement.
inline CriterionReport ccn_check(const DensityMatrix& rho, const Tolerances& tol = {}) {
    const OperatorSchmidt schmidt = operator_schmidt(rho, tol.herm);
    CriterionReport report;
    report.criterion = CriterionKind::ccn;
    report.value = schmidt.schmidt_sum;
    report.detected = above(report.value, 1.0, tol);
    report.details["lambda_sum"] = schmidt.schmidt_sum;
    report.details["lambda_max"] = schmidt.lambdas(0);
    report.details["terms"] = static_cast<double>(schmidt.lambdas.size());
    return report;
}

/// W = 1 - sum_k G^A_k (x) G^B_k built from the operator Schmidt factors of rho.
inline Witness ccn_witness(const DensityMatrix& rho, const Tolerances& tol = {}) {
    OperatorSchmidt schmidt = operator_schmidt(rho, tol.herm);
    const Dims dims = rho.dims();
    ComplexMatrix w = identity(dims.total());
    for (std::size_t k = 0; k < schmidt.ops_a.size(); ++k) w -= kron(schmidt.ops_a[k], schmidt.ops_b[k]);
    return {dims, std::move(w), "ccn_schmidt", std::move(schmidt.ops_a), std::move(schmidt.ops_b)};
}

/// The realignment form of the cross-norm witness, from the thin SVD
/// R(rho) = U S V^dagger:
///   direct     = 1 - R^-1(U V^dagger)
///   transposed = 1 - [R^-1(conj(U) V^T)]^T
/// The two agree because R^-1 commutes with entrywise conjugation.
struct RealignWitnessForms {
    ComplexMatrix direct;
    ComplexMatrix transposed;
};

inline RealignWitnessForms realign_witness_forms(const DensityMatrix& rho) {
    const Dims dims = rho.dims();
    Eigen::JacobiSVD<ComplexMatrix> svd(realign(rho), Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("realign_witness_forms: singular value decomposition did not converge");
    }
    const ComplexMatrix& u = svd.matrixU();
    const ComplexMatrix& v = svd.matrixV();
    const ComplexMatrix id = identity(dims.total());
    return {id - inverse_realign(u * v.adjoint(), dims),
            id - inverse_realign(u.conjugate() * v.transpose(), dims).transpose()};
}

inline Witness ccn_witness_realign(const DensityMatrix& rho, const Tolerances& tol = {}) {
    RealignWitnessForms forms = realign_witness_forms(rho);
    if (hermiticity_defect(forms.direct) > tol.herm) {
        throw NonHermitianError("ccn_witness_realign: realigned witness is not Hermitian");
    }
    return {rho.dims(), std::move(forms.direct), "ccn_realign", {}, {}};
}

/// Tr(W rho); negative certifies entanglement.
inline CriterionReport witness_check(const Witness& w, const DensityMatrix& rho, const Tolerances& tol = {}) {
    if (w.dims != rho.dims()) throw DimensionError("witness_check: witness and state dimensions differ");
    const Complex value = expectation_complex(rho, w.mat);
    if (std::abs(value.imag()) > tol.herm) {
        throw NonHermitianError("witness_check: imaginary residue exceeds tolerance");
    }
    CriterionReport report;
    report.criterion = CriterionKind::witness;
    report.value = value.real();
    report.detected = below(report.value, 0.0, tol);
    return report;
}

/// Lower bound d - 1 on the variance sum of any complete LOO set.
inline double lur_bound(Index d) {
    if (d < 2) throw std::invalid_argument("lur_bound: dimension must be at least 2");
    return static_cast<double>(d - 1);
}

/// sum_k Var(A_k (x) 1 + 1 (x) B_k) - (c_a + c_b); negative certifies entanglement.
///
/// c_a and c_b are trusted to be valid local uncertainty bounds.
inline CriterionReport lur_generic(const DensityMatrix& rho, const std::vector<HermitianObservable>& obs_a,
                                   const std::vector<HermitianObservable>& obs_b, double c_a, double c_b,
                                   const Tolerances& tol = {}) {
    if (obs_a.size() != obs_b.size()) throw DimensionError("lur_generic: observable lists differ in length");
    const Dims dims = rho.dims();
    const ComplexMatrix id_a = identity(dims.a);
    const ComplexMatrix id_b = identity(dims.b);
    double variance_sum = 0.0;
    for (std::size_t k = 0; k < obs_a.size(); ++k) {
        if (obs_a[k].dim() != dims.a || obs_b[k].dim() != dims.b) {
            throw DimensionError("lur_generic: observable dimension does not match its subsystem");
        }
        const HermitianObservable joint(kron(obs_a[k].matrix(), id_b) + kron(id_a, obs_b[k].matrix()),
                                        std::numeric_limits<double>::infinity());
        variance_sum += variance(rho, joint, tol.herm);
    }
    CriterionReport report;
    report.criterion = CriterionKind::lur_generic;
    report.value = variance_sum - (c_a + c_b);
    report.detected = below(report.value, 0.0, tol);
    report.details["variance_sum"] = variance_sum;
    report.details["bound"] = c_a + c_b;
    return report;
}

/// The LOO local uncertainty relation in nonlinear-witness form:
///   value = 1 - sum_k <G^A_k (x) G^B_k> - 1/2 sum_k <G^A_k (x) 1 - 1 (x) G^B_k>^2
/// Non-negative for separable states whenever {G^A_k} and {G^B_k} are
/// complete LOO sets, one of them possibly padded with zero operators.
inline CriterionReport lur_ccn_value(const DensityMatrix& rho, const OperatorList& ops_a, const OperatorList& ops_b,
                                     const Tolerances& tol = {}) {
    if (ops_a.size() != ops_b.size()) throw DimensionError("lur_ccn_value: operator lists differ in length");
    const Dims dims = rho.dims();
    const ComplexMatrix reduced_a = partial_trace(rho, Subsystem::A);
    const ComplexMatrix reduced_b = partial_trace(rho, Subsystem::B);

    double linear_sum = 0.0;
    double quadratic_sum = 0.0;
    for (std::size_t k = 0; k < ops_a.size(); ++k) {
        const ComplexMatrix& ga = ops_a[k];
        const ComplexMatrix& gb = ops_b[k];
        if (ga.rows() != dims.a || ga.cols() != dims.a || gb.rows() != dims.b || gb.cols() != dims.b) {
            throw DimensionError("lur_ccn_value: operator dimension does not match its subsystem");
        }
        const Complex joint = expectation_complex(rho, kron(ga, gb));
        const Complex local = trace_product(reduced_a, ga) - trace_product(reduced_b, gb);
        if (std::abs(joint.imag()) > tol.herm || std::abs(local.imag()) > tol.herm) {
            throw NonHermitianError("lur_ccn_value: imaginary residue exceeds tolerance");
        }
        linear_sum += joint.real();
        quadratic_sum += local.real() * local.real();
    }

    CriterionReport report;
    report.criterion = CriterionKind::lur_ccn;
    report.value = 1.0 - linear_sum - 0.5 * quadratic_sum;
    report.detected = below(report.value, 0.0, tol);
    report.details["linear_sum"] = linear_sum;
    report.details["quadratic_sum"] = quadratic_sum;
    report.details["linear_part"] = 1.0 - linear_sum;
    report.details["quadratic_part"] = 0.5 * quadratic_sum;
    return report;
}

inline CriterionReport lur_ccn_value(const DensityMatrix& rho, const LOOBasis& basis_a, const LOOBasis& basis_b,
                                     const Tolerances& tol = {}) {
    return lur_ccn_value(rho, basis_a.ops(), basis_b.ops(), tol);
}

/// Operator lists for the LUR test built from the Schmidt factors of `schmidt`.
/// For d_A != d_B the smaller-dimension side is already a full basis; the
/// other side is completed with complete_loos and the smaller side padded with
/// zero operators to the same length.
struct LurOperators {
    OperatorList ops_a;
    OperatorList ops_b;
    std::size_t padded = 0;
    Subsystem completed_side = Subsystem::B;
};

inline LurOperators lur_operators(const OperatorSchmidt& schmidt) {
    LurOperators out{schmidt.ops_a, schmidt.ops_b, 0, Subsystem::B};
    const Dims dims = schmidt.dims;
    if (dims.a < dims.b) {
        out.ops_b = complete_loos(schmidt.ops_b, dims.b).ops();
        out.padded = out.ops_b.size() - out.ops_a.size();
        out.ops_a.resize(out.ops_b.size(), ComplexMatrix::Zero(dims.a, dims.a));
        out.completed_side = Subsystem::B;
    } else if (dims.b < dims.a) {
        out.ops_a = complete_loos(schmidt.ops_a, dims.a).ops();
        out.padded = out.ops_a.size() - out.ops_b.size();
        out.ops_b.resize(out.ops_a.size(), ComplexMatrix::Zero(dims.b, dims.b));
        out.completed_side = Subsystem::A;
    }
    return out;
}

/// LUR test with the LOOs taken from the state's own operator Schmidt
/// decomposition. Detects every state the cross-norm criterion detects.
inline CriterionReport lur_detect(const DensityMatrix& rho, const Tolerances& tol = {}) {
    const OperatorSchmidt schmidt = operator_schmidt(rho, tol.herm);
    const LurOperators ops = lur_operators(schmidt);
    CriterionReport report = lur_ccn_value(rho, ops.ops_a, ops.ops_b, tol);
    report.details["lambda_sum"] = schmidt.schmidt_sum;
    report.details["padded_operators"] = static_cast<double>(ops.padded);
    if (ops.padded > 0) report.details["completed_side"] = ops.completed_side == Subsystem::A ? 0.0 : 1.0;
    return report;
}

}  // namespace entcrit
