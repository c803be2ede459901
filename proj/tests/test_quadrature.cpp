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

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "qest/quadrature.hpp"

namespace {

using namespace qest;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    for (int n : {1, 2, 5, 17, 64}) {
        const GaussRule rule = gauss_legendre(n, 0.0, 2.0);
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], d);
            EXPECT_NEAR(s, std::pow(2.0, d + 1) / (d + 1), 1e-12 * std::pow(2.0, d + 1)) << "n=" << n << " d=" << d;
        }
    }
}

TEST(GaussLegendre, NodesAscendingInsideInterval) {
    const GaussRule rule = gauss_legendre(40);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        EXPECT_GT(rule.nodes[i], -1.0);
        EXPECT_LT(rule.nodes[i], 1.0);
        if (i > 0) {
            EXPECT_GT(rule.nodes[i], rule.nodes[i - 1]);
        }
    }
    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(AdaptiveQuadrature, MatchesTanhSinhOracle) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [](double x) { return std::pow(x, -0.75) * std::exp(-x) + std::sin(10 * x); };
    const IntegrationResult r = integrate_adaptive(f, 0.0, 3.0, 1e-11);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, ts.integrate(f, 0.0, 3.0), 1e-9);
}

TEST(AdaptiveQuadrature, SmoothIntegralToTolerance) {
    const IntegrationResult r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-14);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
}

TEST(AdaptiveQuadrature, ReportsNonConvergence) {
    const IntegrationResult r =
        integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 0.0, 20);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.error, 1e-12);
}

}  // namespace
