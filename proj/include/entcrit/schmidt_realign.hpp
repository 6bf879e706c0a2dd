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
#include <cstddef>
#include <utility>

#include "entcrit/loo_basis.hpp"
#include "entcrit/operator_algebra.hpp"

namespace entcrit {

/// Real expansion coefficients mu_kl = Tr(rho (G^A_k (x) G^B_l)) in a pair of LOO bases.
struct CoefficientMatrix {
    RealMatrix mu;
    LOOBasis basis_a;
    LOOBasis basis_b;
};

/// Operator Schmidt decomposition rho = sum_k lambda_k G^A_k (x) G^B_k.
///
/// Holds min(d_A^2, d_B^2) terms with lambdas descending. For degenerate
/// lambdas the operators are whatever the SVD returned; only the lambdas and
/// the reconstruction are meaningful.
struct OperatorSchmidt {
    Dims dims;
    RealVector lambdas;
    OperatorList ops_a;
    OperatorList ops_b;
    double schmidt_sum = 0.0;

    [[nodiscard]] ComplexMatrix reconstruct() const {
        ComplexMatrix out = ComplexMatrix::Zero(dims.total(), dims.total());
        for (std::size_t k = 0; k < ops_a.size(); ++k) {
            out += lambdas(static_cast<Index>(k)) * kron(ops_a[k], ops_b[k]);
        }
        return out;
    }
};

inline CoefficientMatrix coefficient_matrix(const ComplexMatrix& op, Dims dims, const LOOBasis& basis_a,
                                            const LOOBasis& basis_b, double tol_herm = Tolerances{}.herm) {
    detail::require_bipartite(op, dims, "coefficient_matrix");
    if (basis_a.dim() != dims.a || basis_b.dim() != dims.b) {
        throw DimensionError("coefficient_matrix: basis dimensions do not match the subsystem dimensions");
    }
    // reduced_k = Tr_A[rho (G^A_k (x) 1)], then mu_kl = Tr(reduced_k G^B_l).
    RealMatrix mu(static_cast<Index>(basis_a.size()), static_cast<Index>(basis_b.size()));
    for (std::size_t k = 0; k < basis_a.size(); ++k) {
        const ComplexMatrix& ga = basis_a[k];
        ComplexMatrix reduced = ComplexMatrix::Zero(dims.b, dims.b);
        for (Index i = 0; i < dims.a; ++i) {
            for (Index m = 0; m < dims.a; ++m) {
                if (ga(m, i) == Complex(0.0, 0.0)) continue;
                reduced += ga(m, i) * op.block(i * dims.b, m * dims.b, dims.b, dims.b);
            }
        }
        for (std::size_t l = 0; l < basis_b.size(); ++l) {
            const Complex value = trace_product(reduced, basis_b[l]);
            if (std::abs(value.imag()) > tol_herm) {
                throw NonHermitianError("coefficient_matrix: imaginary residue exceeds tolerance");
            }
            mu(static_cast<Index>(k), static_cast<Index>(l)) = value.real();
        }
    }
    return {std::move(mu), basis_a, basis_b};
}

inline CoefficientMatrix coefficient_matrix(const DensityMatrix& rho, const LOOBasis& basis_a, const LOOBasis& basis_b,
                                            double tol_herm = Tolerances{}.herm) {
    return coefficient_matrix(rho.matrix(), rho.dims(), basis_a, basis_b, tol_herm);
}

/// Schmidt decomposition via a real SVD of mu = O_A diag(lambda) O_B^T; the
/// real orthogonal factors keep the resulting operators Hermitian.
inline OperatorSchmidt operator_schmidt(const ComplexMatrix& op, Dims dims, const LOOBasis& basis_a,
                                        const LOOBasis& basis_b, double tol_herm = Tolerances{}.herm) {
    const CoefficientMatrix coeffs = coefficient_matrix(op, dims, basis_a, basis_b, tol_herm);
    Eigen::JacobiSVD<RealMatrix> svd(coeffs.mu, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("operator_schmidt: singular value decomposition did not converge");
    }
    const RealMatrix& u = svd.matrixU();
    const RealMatrix& v = svd.matrixV();
    const Index terms = std::min(coeffs.mu.rows(), coeffs.mu.cols());

    OperatorSchmidt out;
    out.dims = dims;
    out.lambdas = svd.singularValues().head(terms);
    out.schmidt_sum = out.lambdas.sum();
    out.ops_a.assign(static_cast<std::size_t>(terms), ComplexMatrix::Zero(dims.a, dims.a));
    out.ops_b.assign(static_cast<std::size_t>(terms), ComplexMatrix::Zero(dims.b, dims.b));
    for (Index k = 0; k < terms; ++k) {
        auto& ga = out.ops_a[static_cast<std::size_t>(k)];
        auto& gb = out.ops_b[static_cast<std::size_t>(k)];
        for (Index l = 0; l < u.rows(); ++l) ga += u(l, k) * basis_a[static_cast<std::size_t>(l)];
        for (Index l = 0; l < v.rows(); ++l) gb += v(l, k) * basis_b[static_cast<std::size_t>(l)];
    }
    return out;
}

inline OperatorSchmidt operator_schmidt(const ComplexMatrix& op, Dims dims, double tol_herm = Tolerances{}.herm) {
    return operator_schmidt(op, dims, canonical_loos(dims.a), canonical_loos(dims.b), tol_herm);
}

inline OperatorSchmidt operator_schmidt(const DensityMatrix& rho, double tol_herm = Tolerances{}.herm) {
    return operator_schmidt(rho.matrix(), rho.dims(), tol_herm);
}

/// Column-stacking vectorization: |G>[j*rows + i] = G(i, j).
inline ComplexVector vectorize(const ComplexMatrix& g) {
    ComplexVector out(g.size());
    for (Index j = 0; j < g.cols(); ++j) {
        for (Index i = 0; i < g.rows(); ++i) out(j * g.rows() + i) = g(i, j);
    }
    return out;
}

inline ComplexMatrix unvectorize(const ComplexVector& v, Index rows, Index cols) {
    if (v.size() != rows * cols) throw DimensionError("unvectorize: length does not match the requested shape");
    ComplexMatrix out(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) out(i, j) = v(j * rows + i);
    }
    return out;
}

/// Realigned matrix R(X), d_A^2 x d_B^2:
/// R[j*d_A + i, l*d_B + k] = X[i*d_B + k, j*d_B + l].
///
/// For X = A (x) B this is |A><B| with <B| the plain transpose of |B>.
inline ComplexMatrix realign(const ComplexMatrix& op, Dims dims) {
    detail::require_bipartite(op, dims, "realign");
    ComplexMatrix out(dims.a * dims.a, dims.b * dims.b);
    for (Index i = 0; i < dims.a; ++i) {
        for (Index j = 0; j < dims.a; ++j) {
            for (Index k = 0; k < dims.b; ++k) {
                for (Index l = 0; l < dims.b; ++l) {
                    out(j * dims.a + i, l * dims.b + k) = op(i * dims.b + k, j * dims.b + l);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix realign(const DensityMatrix& rho) { return realign(rho.matrix(), rho.dims()); }

inline ComplexMatrix inverse_realign(const ComplexMatrix& m, Dims dims) {
    if (dims.a < 1 || dims.b < 1 || m.rows() != dims.a * dims.a || m.cols() != dims.b * dims.b) {
        throw DimensionError("inverse_realign: matrix is " + detail::shape_string(m) + ", expected d_A^2 x d_B^2");
    }
    ComplexMatrix out(dims.total(), dims.total());
    for (Index i = 0; i < dims.a; ++i) {
        for (Index j = 0; j < dims.a; ++j) {
            for (Index k = 0; k < dims.b; ++k) {
                for (Index l = 0; l < dims.b; ++l) {
                    out(i * dims.b + k, j * dims.b + l) = m(j * dims.a + i, l * dims.b + k);
                }
            }
        }
    }
    return out;
}

}  // namespace entcrit
