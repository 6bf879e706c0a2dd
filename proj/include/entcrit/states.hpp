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
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entcrit/operator_algebra.hpp"

namespace entcrit {

/// Seeded random source for test corpora.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniforms take the top 53 bits; normals use Box-Muller. Neither
/// step goes through std:: distributions, whose algorithms are
/// implementation-defined, so corpora match across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1).
    double uniform() {
        double u = 0.0;
        while (u == 0.0) u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return u;
    }

    double normal() {
        if (spare_) {
            const double out = *spare_;
            spare_.reset();
            return out;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        return r * std::cos(theta);
    }

    Complex complex_normal() {
        const double re = normal();
        return {re, normal()};
    }

    double exponential() { return -std::log(uniform()); }

    /// Uniform integer in [lo, hi].
    Index integer(Index lo, Index hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<Index>(engine_() % span);
    }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

inline ComplexVector basis_ket(Index d, Index i) {
    ComplexVector v = ComplexVector::Zero(d);
    v(i) = 1.0;
    return v;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// (|01> - |10>)/sqrt2.
inline ComplexVector singlet_vector() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v;
}

inline DensityMatrix singlet() { return {projector(singlet_vector()), {2, 2}}; }

inline DensityMatrix maximally_mixed(Dims dims) {
    return {identity(dims.total()) / static_cast<double>(dims.total()), dims};
}

inline DensityMatrix product_zero(Dims dims) { return {projector(basis_ket(dims.total(), 0)), dims}; }

/// p |singlet><singlet| + (1 - p) (2/3 |00><00| + 1/3 |01><01|).
inline DensityMatrix noisy_singlet(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noisy_singlet: p must lie in [0, 1]");
    ComplexMatrix noise = ComplexMatrix::Zero(4, 4);
    noise(0, 0) = 2.0 / 3.0;
    noise(1, 1) = 1.0 / 3.0;
    return {p * projector(singlet_vector()) + (1.0 - p) * noise, {2, 2}};
}

/// The five 3x3 "Tiles" product vectors; an unextendible product basis.
inline std::vector<ComplexVector> tiles_vectors() {
    const auto ket = [](Index i) { return basis_ket(3, i); };
    const double h = 1.0 / std::sqrt(2.0);
    return {
        kron(ket(0), ComplexVector(h * (ket(0) - ket(1)))),
        kron(ComplexVector(h * (ket(0) - ket(1))), ket(2)),
        kron(ket(2), ComplexVector(h * (ket(1) - ket(2)))),
        kron(ComplexVector(h * (ket(1) - ket(2))), ket(0)),
        ComplexVector(kron(ComplexVector(ket(0) + ket(1) + ket(2)), ComplexVector(ket(0) + ket(1) + ket(2))) / 3.0),
    };
}

/// (1 - sum_i |psi_i><psi_i|) / 4: bound entangled, PPT.
inline DensityMatrix tiles_rho_be() {
    ComplexMatrix m = identity(9);
    for (const auto& v : tiles_vectors()) m -= projector(v);
    return {m / 4.0, {3, 3}};
}

/// p rho_BE + (1 - p) 1/9.
inline DensityMatrix tiles_state(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("tiles_state: p must lie in [0, 1]");
    return {p * tiles_rho_be().matrix() + (1.0 - p) * identity(9) / 9.0, {3, 3}};
}

/// One-parameter family of states, p in [p_min, p_max].
struct StateFamily {
    std::string name;
    Dims dims;
    double p_min = 0.0;
    double p_max = 1.0;
    std::function<DensityMatrix(double)> generator;
};

inline StateFamily noisy_singlet_family() { return {"noisy_singlet", {2, 2}, 0.0, 1.0, noisy_singlet}; }

inline StateFamily tiles_family() {
    // Build rho_BE once; the family is an affine mix with white noise.
    auto be = std::make_shared<const ComplexMatrix>(tiles_rho_be().matrix());
    return {"tiles", {3, 3}, 0.0, 1.0, [be](double p) {
                if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("tiles_state: p must lie in [0, 1]");
                return DensityMatrix(p * *be + (1.0 - p) * identity(9) / 9.0, {3, 3});
            }};
}

/// sum_i |ii> / sqrt(d).
inline ComplexVector max_entangled(Index d) {
    if (d < 2) throw std::invalid_argument("max_entangled: dimension must be at least 2");
    ComplexVector v = ComplexVector::Zero(d * d);
    for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return v;
}

/// Induced-measure random state G G^dagger / Tr(G G^dagger) with G a
/// d x rank complex Gaussian matrix, d = dims.total().
inline DensityMatrix random_density(Dims dims, Index rank, Rng& rng) {
    const Index d = dims.total();
    if (rank < 1 || rank > d) throw std::invalid_argument("random_density: rank must lie in [1, d]");
    ComplexMatrix g(d, rank);
    for (Index j = 0; j < rank; ++j) {
        for (Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return {std::move(rho), dims};
}

inline DensityMatrix random_density(Dims dims, Index rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(dims, rank, rng);
}

/// Single-system variant: the state lives on dims {d, 1}.
inline DensityMatrix random_density(Index d, Index rank, std::uint64_t seed) {
    return random_density(Dims{d, 1}, rank, seed);
}

/// sum_k p_k rho^A_k (x) rho^B_k with Dirichlet(1,...,1) weights and factors of
/// random rank; separable by construction.
inline DensityMatrix random_separable(Index d_a, Index d_b, Index terms, std::uint64_t seed) {
    if (terms < 1) throw std::invalid_argument("random_separable: need at least one term");
    Rng rng(seed);
    std::vector<double> weights(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (auto& w : weights) total += (w = rng.exponential());

    const Dims dims{d_a, d_b};
    ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
    for (double w : weights) {
        const DensityMatrix a = random_density(Dims{d_a, 1}, rng.integer(1, d_a), rng);
        const DensityMatrix b = random_density(Dims{d_b, 1}, rng.integer(1, d_b), rng);
        rho += (w / total) * kron(a.matrix(), b.matrix());
    }
    return {0.5 * (rho + rho.adjoint()), dims};
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal moved into Q.
inline ComplexMatrix haar_unitary(Index d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
    Rng rng(seed);
    ComplexMatrix z(d, d);
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < d; ++i) z(i, j) = rng.complex_normal();
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

}  // namespace entcrit
