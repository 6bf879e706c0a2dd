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
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace entcrit {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared by every check in the toolkit.
///
/// Defaults are sized for double-precision spectra of matrices up to 81x81
/// (a 9x9 bipartite system). All of them can be overridden per call.
struct Tolerances {
    double herm = 1e-10;   ///< max |M - M^dagger| entry
    double trace = 1e-9;   ///< |Tr(rho) - 1|
    double psd = 1e-9;     ///< allowed negative eigenvalue of a state
    double eig = 1e-10;    ///< eigen/singular reconstruction residual
    double detect = 1e-9;  ///< margin a criterion must exceed to report detection
};

/// Raised for shape or subsystem-dimension mismatches.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative decomposition fails to converge.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a Hermitian quantity picks up a non-negligible imaginary part.
class NonHermitianError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Subsystem dimensions (d_A, d_B) of a bipartite operator.
///
/// Composite indices are always (i, k) -> i * d_B + k, subsystem A major.
struct Dims {
    Index a = 0;
    Index b = 0;

    [[nodiscard]] Index total() const { return a * b; }
    friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

namespace detail {

inline std::string shape_string(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + shape_string(m));
    }
}

inline void require_bipartite(const ComplexMatrix& m, Dims dims, const char* what) {
    require_square(m, what);
    if (dims.a < 1 || dims.b < 1 || m.rows() != dims.total()) {
        std::ostringstream os;
        os << what << ": matrix is " << shape_string(m) << " but d_A*d_B = " << dims.a << "*" << dims.b;
        throw DimensionError(os.str());
    }
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
    }
}

}  // namespace detail

/// Largest absolute entry, the max-norm used for every matrix tolerance.
inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const ComplexMatrix& m) {
    detail::require_square(m, "hermiticity_defect");
    return max_abs(m - m.adjoint());
}

inline ComplexMatrix identity(Index d) { return ComplexMatrix::Identity(d, d); }

/// Kronecker product: (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Tr(A * B) without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace_product: incompatible shapes " + detail::shape_string(a) + " and " +
                             detail::shape_string(b));
    }
    return a.transpose().cwiseProduct(b).sum();
}

/// Transpose on subsystem B: out[(i,k),(j,l)] = M[(i,l),(j,k)].
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims) {
    detail::require_bipartite(m, dims, "partial_transpose");
    ComplexMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < dims.a; ++i) {
        for (Index j = 0; j < dims.a; ++j) {
            out.block(i * dims.b, j * dims.b, dims.b, dims.b) =
                m.block(i * dims.b, j * dims.b, dims.b, dims.b).transpose();
        }
    }
    return out;
}

/// Reduced operator on the kept subsystem.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep) {
    detail::require_bipartite(m, dims, "partial_trace");
    if (keep == Subsystem::A) {
        ComplexMatrix out(dims.a, dims.a);
        for (Index i = 0; i < dims.a; ++i) {
            for (Index j = 0; j < dims.a; ++j) {
                out(i, j) = m.block(i * dims.b, j * dims.b, dims.b, dims.b).trace();
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
    for (Index i = 0; i < dims.a; ++i) {
        out += m.block(i * dims.b, i * dims.b, dims.b, dims.b);
    }
    return out;
}

/// Eigen-decomposition of a Hermitian matrix; values ascending, vectors as columns.
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;
};

inline EigenSystem eig_hermitian(const ComplexMatrix& h, double tol_herm = Tolerances{}.herm) {
    detail::require_square(h, "eig_hermitian");
    if (hermiticity_defect(h) > tol_herm) {
        throw NonHermitianError("eig_hermitian: input is not Hermitian within tolerance");
    }
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_hermitian: eigen-decomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector eigenvalues_hermitian(const ComplexMatrix& h, double tol_herm = Tolerances{}.herm) {
    detail::require_square(h, "eigenvalues_hermitian");
    if (hermiticity_defect(h) > tol_herm) {
        throw NonHermitianError("eigenvalues_hermitian: input is not Hermitian within tolerance");
    }
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalues_hermitian: eigen-decomposition did not converge");
    }
    return solver.eigenvalues();
}

/// Singular values, descending.
inline RealVector svd_values(const ComplexMatrix& m) {
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("svd_values: singular value decomposition did not converge");
    }
    return svd.singularValues();
}

inline double trace_norm(const ComplexMatrix& m) { return svd_values(m).sum(); }

/// Outcome of a density-matrix validity check.
struct DensityValidity {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool valid = false;
};

inline DensityValidity is_density_matrix(const ComplexMatrix& m, Dims dims, const Tolerances& tol = {}) {
    detail::require_bipartite(m, dims, "is_density_matrix");
    DensityValidity report;
    if (!m.allFinite()) {
        report.hermiticity_defect = std::numeric_limits<double>::infinity();
        report.trace_defect = std::numeric_limits<double>::infinity();
        report.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return report;
    }
    report.hermiticity_defect = hermiticity_defect(m);
    report.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
    // The spectrum of the Hermitian part is meaningful even when the defect is large.
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    report.min_eigenvalue = eigenvalues_hermitian(sym, std::numeric_limits<double>::infinity())(0);
    report.valid = report.hermiticity_defect <= tol.herm && report.trace_defect <= tol.trace &&
                   report.min_eigenvalue >= -tol.psd;
    return report;
}

/// Thrown when a matrix does not describe a valid state; carries the defects.
class InvalidStateError : public std::invalid_argument {
  public:
    explicit InvalidStateError(const DensityValidity& report)
        : std::invalid_argument(describe(report)), report_(report) {}

    [[nodiscard]] const DensityValidity& report() const { return report_; }

  private:
    static std::string describe(const DensityValidity& r) {
        std::ostringstream os;
        os << "not a density matrix (hermiticity defect " << r.hermiticity_defect << ", trace defect "
           << r.trace_defect << ", min eigenvalue " << r.min_eigenvalue << ")";
        return os.str();
    }

    DensityValidity report_;
};

/// Bipartite state: a validated unit-trace PSD Hermitian matrix with subsystem dimensions.
class DensityMatrix {
  public:
    DensityMatrix(ComplexMatrix mat, Dims dims, const Tolerances& tol = {}) : mat_(std::move(mat)), dims_(dims) {
        const DensityValidity report = is_density_matrix(mat_, dims_, tol);
        if (!report.valid) throw InvalidStateError(report);
    }

    [[nodiscard]] const ComplexMatrix& matrix() const { return mat_; }
    [[nodiscard]] Dims dims() const { return dims_; }
    [[nodiscard]] Index size() const { return mat_.rows(); }
    [[nodiscard]] double purity() const { return trace_product(mat_, mat_).real(); }

  private:
    ComplexMatrix mat_;
    Dims dims_;
};

/// Square matrix that is Hermitian within tolerance.
class HermitianObservable {
  public:
    explicit HermitianObservable(ComplexMatrix mat, double tol_herm = Tolerances{}.herm) : mat_(std::move(mat)) {
        detail::require_square(mat_, "HermitianObservable");
        detail::require_finite(mat_, "HermitianObservable");
        if (hermiticity_defect(mat_) > tol_herm) {
            throw NonHermitianError("HermitianObservable: matrix is not Hermitian within tolerance");
        }
    }

    [[nodiscard]] const ComplexMatrix& matrix() const { return mat_; }
    [[nodiscard]] Index dim() const { return mat_.rows(); }

  private:
    ComplexMatrix mat_;
};

inline ComplexMatrix partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.matrix(), rho.dims()); }

inline ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    return partial_trace(rho.matrix(), rho.dims(), keep);
}

inline EigenSystem eig_hermitian(const HermitianObservable& h) {
    return eig_hermitian(h.matrix(), std::numeric_limits<double>::infinity());
}

/// Tr(rho * O) for an arbitrary (possibly non-Hermitian) operator.
inline Complex expectation_complex(const DensityMatrix& rho, const ComplexMatrix& op) {
    if (op.rows() != rho.size() || op.cols() != rho.size()) {
        throw DimensionError("expectation: operator is " + detail::shape_string(op) + ", state is " +
                             detail::shape_string(rho.matrix()));
    }
    return trace_product(rho.matrix(), op);
}

inline double expectation(const DensityMatrix& rho, const HermitianObservable& o, double tol_herm = Tolerances{}.herm) {
    const Complex value = expectation_complex(rho, o.matrix());
    if (std::abs(value.imag()) > tol_herm) {
        throw NonHermitianError("expectation: imaginary residue exceeds tolerance");
    }
    return value.real();
}

inline double variance(const DensityMatrix& rho, const HermitianObservable& o, double tol_herm = Tolerances{}.herm) {
    const double mean = expectation(rho, o, tol_herm);
    const Complex second = expectation_complex(rho, o.matrix() * o.matrix());
    if (std::abs(second.imag()) > tol_herm) {
        throw NonHermitianError("variance: imaginary residue exceeds tolerance");
    }
    return second.real() - mean * mean;
}

}  // namespace entcrit
