// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <algorithm>
#include <numbers>

#include "qest/core.hpp"

namespace {

using namespace qest;
constexpr double kPi = std::numbers::pi;

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 on 2x2 matrices.
double matrix_fidelity(const BlochVector& a, const BlochVector& b) {
    using M = Eigen::Matrix2cd;
    auto rho = [](const BlochVector& v) {
        M m;
        m << std::complex<double>(1 + v.z(), 0), std::complex<double>(v.x(), -v.y()),
            std::complex<double>(v.x(), v.y()), std::complex<double>(1 - v.z(), 0);
        return M(0.5 * m);
    };
    // Eigenvalue square roots of rank-deficient matrices lose sqrt(eps); for
    // 2x2 PSD M, tr sqrt(M) = sqrt(tr M + 2 sqrt(det M)) avoids that.
    auto sqrtm = [](const M& m) {
        Eigen::SelfAdjointEigenSolver<M> es(m);
        Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return M(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
    };
    const M s = sqrtm(rho(a));
    const M inner = s * rho(b) * s;
    const double det = std::max(inner.determinant().real(), 0.0);
    return inner.trace().real() + 2 * std::sqrt(det);
}

TEST(BlochVector, RejectsOutsideBall) {
    EXPECT_THROW(BlochVector(1.0, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(BlochVector(std::nan(""), 0.0, 0.0), std::invalid_argument);
}

TEST(BlochVector, ClampsWithinTolerance) {
    const BlochVector v(1.0 + 5e-10, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(v.norm(), 1.0);
    EXPECT_LE(v.x(), 1.0);
}

TEST(EmbeddedBloch, UnitNormAndTime) {
    const EmbeddedBloch e(BlochVector(0.3, -0.4, 0.5));
    EXPECT_NEAR(norm(e.components()), 1.0, 1e-15);
    EXPECT_NEAR(e.time(), std::sqrt(1 - 0.5), 1e-15);
    const EmbeddedBloch mixed;
    EXPECT_EQ(mixed.time(), 1.0);
    EXPECT_THROW(EmbeddedBloch::from_components({1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(Fidelity, MatchesMatrixOracle) {
    const BlochVector states[] = {{0.0, 0.0, 0.0}, {0.3, -0.4, 0.5}, {1.0, 0.0, 0.0}, {0.0, 0.6, -0.8},
                                  {-0.2, 0.1, 0.05}, {0.7, 0.7, 0.0}};
    for (const auto& a : states) {
        for (const auto& b : states) {
            const double f = fidelity(EmbeddedBloch(a), EmbeddedBloch(b)).value();
            // With a pure state, 1 - r^2 is only known to eps and enters under a
            // square root, so neither side is better than ~sqrt(eps).
            const bool pure = a.norm() > 1 - 1e-12 || b.norm() > 1 - 1e-12;
            EXPECT_NEAR(f, matrix_fidelity(a, b), pure ? 5e-8 : 1e-12);
        }
    }
}

TEST(Fidelity, PureOrthogonalIsZeroAndSelfIsOne) {
    const EmbeddedBloch up(BlochVector(0, 0, 1)), down(BlochVector(0, 0, -1));
    EXPECT_NEAR(fidelity(up, down).value(), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(up, up).value(), 1.0, 1e-15);
}

TEST(FidelityValue, ClampsAndRejectsNan) {
    EXPECT_EQ(FidelityValue(1.0 + 1e-14).value(), 1.0);
    EXPECT_EQ(FidelityValue(-1e-14).value(), 0.0);
    EXPECT_THROW(FidelityValue(std::nan("")), std::invalid_argument);
}

TEST(PriorKind, RoundTrip) {
    EXPECT_EQ(parse_prior_kind(to_string(PriorKind::FullBures)), PriorKind::FullBures);
    EXPECT_EQ(parse_prior_kind(to_string(PriorKind::EquatorialBures)), PriorKind::EquatorialBures);
    EXPECT_THROW(parse_prior_kind("flat"), std::invalid_argument);
}

TEST(SphereGrid, IntegratesPolynomialsExactly) {
    const auto grid = sphere_grid(6);
    double w = 0, z2 = 0, x2y2 = 0, x4 = 0;
    for (const auto& n : grid) {
        const auto& d = n.direction;
        w += n.weight;
        z2 += n.weight * d[2] * d[2];
        x2y2 += n.weight * d[0] * d[0] * d[1] * d[1];
        x4 += n.weight * std::pow(d[0], 4);
    }
    EXPECT_NEAR(w, 1.0, 1e-14);
    EXPECT_NEAR(z2, 1.0 / 3, 1e-14);
    EXPECT_NEAR(x2y2, 1.0 / 15, 1e-14);
    EXPECT_NEAR(x4, 1.0 / 5, 1e-14);
}

// Moments of the radial Bures densities by tanh-sinh quadrature in r.
double radial_moment(PriorKind kind, auto&& f) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const int p = kind == PriorKind::FullBures ? 2 : 1;
    // The complement argument keeps 1 - r exact next to the r = 1 singularity.
    auto density = [&](double r, double rc) {
        const double one_minus = r > 0.5 ? rc : 1 - r;
        return std::pow(r, p) / std::sqrt(one_minus * (1 + r));
    };
    const double z = ts.integrate(density, 0.0, 1.0);
    return ts.integrate([&](double r, double rc) { return density(r, rc) * f(r); }, 0.0, 1.0) / z;
}

TEST(Prior, MomentsMatchTanhSinhOracle) {
    for (PriorKind kind : {PriorKind::FullBures, PriorKind::EquatorialBures}) {
        const Prior prior = build_prior(kind, 48, 16);
        double total = 0, r2 = 0, time = 0, x2 = 0;
        prior.for_each_node([&](const EmbeddedBloch& s, double w) {
            total += w;
            r2 += w * s.spatial().norm() * s.spatial().norm();
            time += w * s.time();
            x2 += w * s.spatial().x() * s.spatial().x();
        });
        EXPECT_NEAR(total, 1.0, 1e-12);  // plain sum over ~25k nodes
        EXPECT_NEAR(r2, radial_moment(kind, [](double r) { return r * r; }), 1e-12);
        EXPECT_NEAR(time, radial_moment(kind, [](double r) { return std::sqrt(1 - r * r); }), 1e-12);
        const double dims = kind == PriorKind::FullBures ? 3.0 : 2.0;
        EXPECT_NEAR(x2, r2 / dims, 1e-13);
    }
    const Prior eq = build_prior(PriorKind::EquatorialBures, 64, 8);
    double r2 = 0;
    eq.for_each_node([&](const EmbeddedBloch& s, double w) { r2 += w * s.spatial().norm() * s.spatial().norm(); });
    EXPECT_NEAR(r2, 2.0 / 3.0, 1e-12);
}

TEST(Prior, EquatorialNodesStayInPlane) {
    const Prior prior = build_prior(PriorKind::EquatorialBures, 8, 8);
    prior.for_each_node([](const EmbeddedBloch& s, double) { EXPECT_EQ(s.spatial().z(), 0.0); });
    EXPECT_THROW(build_prior(PriorKind::FullBures, 1, 8), std::invalid_argument);
}

TEST(RandomGuess, ClosedForms) {
    EXPECT_NEAR(random_guess_fidelity(build_prior(PriorKind::FullBures, 64, 8)).value(),
                0.5 + 8.0 / (9.0 * kPi * kPi), 1e-13);
    EXPECT_NEAR(random_guess_fidelity(build_prior(PriorKind::EquatorialBures, 64, 8)).value(), 0.625, 1e-13);
}

TEST(RandomGuess, EqualsDoubleIntegralOfFidelity) {
    // Average of f(r, r') for two independent prior draws.
    const Prior prior = build_prior(PriorKind::FullBures, 12, 6);
    std::vector<std::pair<EmbeddedBloch, double>> nodes;
    prior.for_each_node([&](const EmbeddedBloch& s, double w) { nodes.emplace_back(s, w); });
    double total = 0;
    for (const auto& [a, wa] : nodes) {
        for (const auto& [b, wb] : nodes) total += wa * wb * fidelity(a, b).value();
    }
    EXPECT_NEAR(total, random_guess_fidelity(prior).value(), 1e-13);
}

}  // namespace
