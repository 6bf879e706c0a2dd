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

// Independent reference computations used only by the tests. Every routine
// here works from index definitions with plain loops and shares no code path
// with the library implementation it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline Complex trace(const Mat& m) {
    Complex t = 0.0;
    for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

/// Tr(rho O) as sum_ij rho_ij O_ji.
inline Complex trace_of_product(const Mat& rho, const Mat& o) {
    Complex t = 0.0;
    for (Index i = 0; i < rho.rows(); ++i)
        for (Index j = 0; j < rho.cols(); ++j) t += rho(i, j) * o(j, i);
    return t;
}

inline Mat partial_transpose_b(const Mat& m, Index da, Index db) {
    Mat out(m.rows(), m.cols());
    for (Index i = 0; i < da; ++i)
        for (Index k = 0; k < db; ++k)
            for (Index j = 0; j < da; ++j)
                for (Index l = 0; l < db; ++l) out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
    return out;
}

/// Brute-force index sum; keep_a selects which factor survives.
inline Mat partial_trace(const Mat& m, Index da, Index db, bool keep_a) {
    if (keep_a) {
        Mat out = Mat::Zero(da, da);
        for (Index i = 0; i < da; ++i)
            for (Index j = 0; j < da; ++j)
                for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
        return out;
    }
    Mat out = Mat::Zero(db, db);
    for (Index k = 0; k < db; ++k)
        for (Index l = 0; l < db; ++l)
            for (Index i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
    return out;
}

/// Singular values as square roots of the eigenvalues of M M^dagger, descending.
inline std::vector<double> singular_values(const Mat& m) {
    const Mat gram = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> solver(gram, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i))));
    std::sort(out.begin(), out.end(), std::greater<>());
    out.resize(static_cast<std::size_t>(std::min(m.rows(), m.cols())));
    return out;
}

inline double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

inline Mat pauli_x() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat pauli_y() { Mat m(2, 2); m << 0, Complex(0, -1), Complex(0, 1), 0; return m; }
inline Mat pauli_z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }

inline Mat singlet_projector() {
    Vec v = Vec::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v * v.adjoint();
}

/// Hand-written expansion mu_kl = Tr(rho (A_k (x) B_l)).
inline Eigen::MatrixXd coefficients(const Mat& rho, const std::vector<Mat>& a, const std::vector<Mat>& b) {
    Eigen::MatrixXd mu(static_cast<Index>(a.size()), static_cast<Index>(b.size()));
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = 0; l < b.size(); ++l)
            mu(static_cast<Index>(k), static_cast<Index>(l)) = trace_of_product(rho, kron(a[k], b[l])).real();
    return mu;
}

/// 1 - sum <A (x) B> - 1/2 sum <A (x) 1 - 1 (x) B>^2 evaluated on the full space.
inline double lur_value(const Mat& rho, const std::vector<Mat>& a, const std::vector<Mat>& b, Index da, Index db) {
    double lin = 0.0, quad = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        lin += trace_of_product(rho, kron(a[k], b[k])).real();
        const Mat local = kron(a[k], Mat::Identity(db, db)) - kron(Mat::Identity(da, da), b[k]);
        const double e = trace_of_product(rho, local).real();
        quad += e * e;
    }
    return 1.0 - lin - 0.5 * quad;
}

/// Lambda(X) = Tr_A[W (X^T (x) 1)] straight from the definition.
inline Mat positive_map(const Mat& w, const Mat& x, Index da, Index db) {
    return partial_trace(w * kron(x.transpose(), Mat::Identity(db, db)), da, db, false);
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
