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
#include <utility>

#include "entcrit/criteria.hpp"
#include "entcrit/loo_basis.hpp"
#include "entcrit/operator_algebra.hpp"
#include "entcrit/states.hpp"

namespace entcrit {

/// The positive map of a witness: Lambda(X) = Tr_A[W (X^T (x) 1_B)].
///
/// Linear in X, so X need not be Hermitian.
inline ComplexMatrix jamiolkowski_apply(const Witness& w, const ComplexMatrix& x) {
    const Dims dims = w.dims;
    if (x.rows() != dims.a || x.cols() != dims.a) {
        throw DimensionError("jamiolkowski_apply: input is " + detail::shape_string(x) + ", expected d_A x d_A");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
    for (Index i = 0; i < dims.a; ++i) {
        for (Index m = 0; m < dims.a; ++m) {
            out += x(i, m) * w.mat.block(i * dims.b, m * dims.b, dims.b, dims.b);
        }
    }
    return out;
}

/// (1 (x) Lambda)(M) for M on H_A (x) H_A; the result lives on H_A (x) H_B.
inline ComplexMatrix jamiolkowski_extend(const Witness& w, const ComplexMatrix& m) {
    const Dims dims = w.dims;
    if (m.rows() != dims.a * dims.a || m.cols() != dims.a * dims.a) {
        throw DimensionError("jamiolkowski_extend: operator must act on H_A (x) H_A");
    }
    ComplexMatrix out(dims.total(), dims.total());
    for (Index i = 0; i < dims.a; ++i) {
        for (Index k = 0; k < dims.a; ++k) {
            out.block(i * dims.b, k * dims.b, dims.b, dims.b) =
                jamiolkowski_apply(w, m.block(i * dims.a, k * dims.a, dims.a, dims.a));
        }
    }
    return out;
}

/// max-norm of |phi+><phi+| - sum_i G_i (x) G_i^T / d.
inline double max_entangled_expansion_check(const LOOBasis& basis) {
    const Index d = basis.dim();
    const ComplexVector phi = max_entangled(d);
    ComplexMatrix expansion = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& g : basis.ops()) expansion += kron(g, g.transpose());
    return max_abs(phi * phi.adjoint() - expansion / static_cast<double>(d));
}

inline double unitarity_defect(const ComplexMatrix& u) {
    detail::require_square(u, "unitarity_defect");
    return max_abs(u.adjoint() * u - identity(u.rows()));
}

inline constexpr double kUnitaryTolerance = 1e-10;

/// F(rho) = <W'> - <X><X^dagger> / s(psi) with W' = W / d and
/// X = (1 (x) d Lambda_{W'})(|phi+><psi|).
///
/// Dividing by d makes d Lambda_{W'} trace preserving on the singlet witness,
/// the normalization the construction requires.
struct NonlinearWitness {
    Witness scaled;
    ComplexVector psi;
    double s_psi = 0.0;
    ComplexMatrix x_op;
};

inline NonlinearWitness build_nonlinear(const Witness& w, const ComplexVector& psi, const Tolerances& tol = {}) {
    const Index d = w.dims.a;
    if (w.dims.a != w.dims.b) throw DimensionError("build_nonlinear: witness must act on a d x d system");
    if (psi.size() != d * d) throw DimensionError("build_nonlinear: psi must live on H_A (x) H_A");
    const double norm = psi.norm();
    if (norm == 0.0) throw std::invalid_argument("build_nonlinear: psi is the zero vector");
    if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("build_nonlinear: psi is not normalized");

    NonlinearWitness nw;
    nw.scaled = w;
    nw.scaled.mat = w.mat / static_cast<double>(d);
    nw.psi = psi;
    const ComplexMatrix reduced = partial_trace(projector(psi), Dims{d, d}, Subsystem::A);
    const RealVector spectrum = eigenvalues_hermitian(reduced, tol.herm);
    nw.s_psi = spectrum(spectrum.size() - 1);
    // d Lambda_{W'} = Lambda_W.
    nw.x_op = jamiolkowski_extend(w, max_entangled(d) * psi.adjoint());
    return nw;
}

inline CriterionReport nonlinear_value(const NonlinearWitness& nw, const DensityMatrix& rho, const Tolerances& tol = {}) {
    if (nw.scaled.dims != rho.dims()) throw DimensionError("nonlinear_value: witness and state dimensions differ");
    const Complex linear = expectation_complex(rho, nw.scaled.mat);
    if (std::abs(linear.imag()) > tol.herm) throw NonHermitianError("nonlinear_value: witness is not Hermitian");
    const Complex x = expectation_complex(rho, nw.x_op);
    const double subtracted = std::norm(x) / nw.s_psi;

    CriterionReport report;
    report.criterion = CriterionKind::nonlinear;
    report.value = linear.real() - subtracted;
    report.detected = below(report.value, 0.0, tol);
    report.details["linear_part"] = linear.real();
    report.details["subtracted"] = subtracted;
    report.details["s_psi"] = nw.s_psi;
    return report;
}

namespace detail {

inline void require_unitary(const ComplexMatrix& u, Index d, const char* what) {
    if (u.rows() != d || u.cols() != d) throw DimensionError(std::string(what) + ": unitary has the wrong dimension");
    if (unitarity_defect(u) > kUnitaryTolerance) throw std::invalid_argument(std::string(what) + ": matrix is not unitary");
}

inline CriterionReport nonlinear_report(double linear, double subtracted, const Tolerances& tol) {
    CriterionReport report;
    report.criterion = CriterionKind::nonlinear;
    report.value = linear - subtracted;
    report.detected = below(report.value, 0.0, tol);
    report.details["linear_part"] = linear;
    report.details["subtracted"] = subtracted;
    return report;
}

}  // namespace detail

/// Closed form for psi = (U^dagger (x) 1)|phi+>, where s(psi) = 1/d:
///   F = <W'> - d <W'(U (x) 1)> <(U (x) 1)^dagger W'>.
inline CriterionReport nl_example_unitary(const Witness& w, const ComplexMatrix& u, const DensityMatrix& rho,
                                          const Tolerances& tol = {}) {
    const Index d = w.dims.a;
    if (w.dims.a != w.dims.b || w.dims != rho.dims()) throw DimensionError("nl_example_unitary: dimension mismatch");
    detail::require_unitary(u, d, "nl_example_unitary");
    const ComplexMatrix scaled = w.mat / static_cast<double>(d);
    const Complex linear = expectation_complex(rho, scaled);
    const Complex x = expectation_complex(rho, scaled * kron(u, identity(d)));
    return detail::nonlinear_report(linear.real(), static_cast<double>(d) * std::norm(x), tol);
}

/// eta_ij = Tr[G_i^T G_j^T U].
inline ComplexMatrix eta_coefficients(const OperatorList& ops, const ComplexMatrix& u) {
    const auto n = static_cast<Index>(ops.size());
    ComplexMatrix eta(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            eta(i, j) = trace_product(ops[static_cast<std::size_t>(i)].transpose(),
                                      ops[static_cast<std::size_t>(j)].transpose() * u);
        }
    }
    return eta;
}

/// X for psi = (1 (x) U^dagger)|phi+>, expanded in the witness's Schmidt factors:
///   X = U^T (x) 1 - sum_ij eta_ji G^A_i (x) G^B_j
/// At U = 1 this is the cross-norm witness itself.
inline ComplexMatrix eta_operator(const Witness& w, const ComplexMatrix& u) {
    const Index d = w.dims.a;
    const ComplexMatrix eta = eta_coefficients(w.ops_a, u);
    ComplexMatrix x = kron(u.transpose(), identity(d));
    for (std::size_t i = 0; i < w.ops_a.size(); ++i) {
        ComplexMatrix mixed = ComplexMatrix::Zero(d, d);
        for (std::size_t j = 0; j < w.ops_b.size(); ++j) {
            mixed += eta(static_cast<Index>(j), static_cast<Index>(i)) * w.ops_b[j];
        }
        x -= kron(w.ops_a[i], mixed);
    }
    return x;
}

/// F = <W'> - d <X'><X'^dagger> with X' = X / d, psi = (1 (x) U^dagger)|phi+>.
///
/// `basis` must be the A-side operator set the witness was assembled from.
inline CriterionReport nl_example_eta(const Witness& w, const ComplexMatrix& u, const LOOBasis& basis,
                                      const DensityMatrix& rho, const Tolerances& tol = {}) {
    const Index d = w.dims.a;
    if (w.dims.a != w.dims.b || w.dims != rho.dims()) throw DimensionError("nl_example_eta: dimension mismatch");
    if (basis.dim() != d || w.ops_a.size() != basis.size() || w.ops_b.size() != basis.size()) {
        throw DimensionError("nl_example_eta: basis does not match the witness's Schmidt factors");
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (max_abs(basis[k] - w.ops_a[k]) > kLooOrthTolerance) {
            throw std::invalid_argument("nl_example_eta: basis differs from the witness's A-side operators");
        }
    }
    detail::require_unitary(u, d, "nl_example_eta");

    const double dd = static_cast<double>(d);
    const Complex linear = expectation_complex(rho, w.mat / dd);
    const Complex x = expectation_complex(rho, eta_operator(w, u) / dd);
    return detail::nonlinear_report(linear.real(), dd * std::norm(x), tol);
}

}  // namespace entcrit
