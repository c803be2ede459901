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

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "qest/asymptotics.hpp"

namespace {

using namespace qest;
constexpr double kPi = std::numbers::pi;

TEST(ImK, NegativeAndMatchesContinuationFormula) {
    for (double x : {1e-3, 0.1, 1.0, 3.0, 10.0, 40.0}) {
        const double v = im_k_quarter_negative(x);
        EXPECT_LT(v, 0.0);
        const double oracle = -std::sin(kPi / 4) * boost::math::cyl_bessel_k(0.25, x) -
                              kPi * boost::math::cyl_bessel_i(0.25, x);
        EXPECT_NEAR(v / oracle, 1.0, 1e-10);
        EXPECT_NEAR(im_k_quarter_negative_scaled(x) / (v * std::exp(-x)), 1.0, 1e-10);
    }
    EXPECT_THROW(im_k_quarter_negative(0.0), std::domain_error);
}

TEST(ImK, LargeArgumentCancellation) {
    const double x = 30.0;
    const double value = std::exp(x) / (std::pow(x, 0.75) * im_k_quarter_negative(x)) +
                         std::sqrt(2.0) / (std::sqrt(kPi) * std::pow(x, 0.25));
    // Leading term of the large-x expansion of I_{1/4}: 3 sqrt(2) / (32 sqrt(pi)) x^(-5/4).
    const double leading = 3 * std::sqrt(2.0) / (32 * std::sqrt(kPi)) * std::pow(x, -1.25);
    EXPECT_NEAR(value / leading, 1.0, 0.05);
    EXPECT_NEAR(b1_integrand(x), value, 1e-12);
}

TEST(Integrands, TailFormContinuousAtSwitch) {
    // Just below the switch the direct difference is used; just above, the
    // series form. Both must describe the same smooth function.
    const double below = b1_integrand(40.0 - 1e-9);
    const double above = b1_integrand(40.0);
    EXPECT_NEAR(below, above, 1e-10 * std::abs(above) + 1e-13);
}

TEST(AppendixIntegrals, KnownValues) {
    const AppendixIntegrals b = appendix_integrals();
    EXPECT_NEAR(b.b1, 0.197241, 1e-4);
    EXPECT_NEAR(b.b2, 1.61451, 1e-4);
    EXPECT_NEAR(b.b3, 0.31400, 1e-4);
    EXPECT_LT(b.error, 1e-6);
}

TEST(Constants, ValuesAndAssembly) {
    const AsymptoticConstants c = constants();
    EXPECT_NEAR(c.collective_coeff, 1.17441, 1e-5);
    EXPECT_NEAR(c.xi_ml, 0.2256, 5e-4);
    EXPECT_NEAR(c.xi_o, 0.17083, 2e-4);
    EXPECT_LT(c.xi_o, c.xi_ml);
    EXPECT_EQ(c.xi_o, assemble_xi_optimal(c.b1, c.b2, c.b3));
}

TEST(FitExponent, ExactPowerLaw) {
    std::vector<int> n = {8, 16, 64, 256, 1024};
    std::vector<double> f;
    for (int v : n) f.push_back(1.0 - 2.0 / v);
    const ExponentFit fit = fit_exponent(n, f);
    EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
    EXPECT_NEAR(fit.coefficient, 2.0, 1e-11);
    EXPECT_LT(fit.residual, 1e-12);
    EXPECT_EQ(fit.n_min, 8);
    EXPECT_EQ(fit.n_max, 1024);
}

TEST(FitExponent, DegenerateInput) {
    EXPECT_THROW(fit_exponent(std::vector<int>{1, 2, 3}, std::vector<double>{0.1, 0.2, 0.3}), std::invalid_argument);
    EXPECT_THROW(fit_exponent(std::vector<int>{1, 2, 3, 4}, std::vector<double>{0.1, 0.2, 1.0, 0.9}),
                 std::invalid_argument);
    EXPECT_THROW(fit_exponent(std::vector<int>{1, 2, 3, 4}, std::vector<double>{0.5, 0.6, 0.4, 0.7}),
                 std::invalid_argument);
    EXPECT_THROW(fit_exponent(std::vector<int>{1, 3, 2, 4}, std::vector<double>{0.5, 0.6, 0.7, 0.8}),
                 std::invalid_argument);
}

TEST(FitExponent, CollectiveSweep) {
    const std::vector<int> n = {64, 128, 256, 512, 1024};
    const SweepResult s = sweep(SchemeKind::Collective, EstimatorKind::Optimal, PriorKind::FullBures, n);
    const ExponentFit fit = fit_exponent(s);
    EXPECT_NEAR(fit.exponent, 1.0, 0.05);
    // A two-parameter fit over a finite window absorbs the 1/N correction
    // into the coefficient, so compare the largest point directly instead.
    const FidelityReport& last = s.points.back();
    const double scaled = last.copies() * (1 - last.fidelity.value());
    EXPECT_LT(scaled, collective_coefficient());
    EXPECT_NEAR(scaled / collective_coefficient(), 1.0, 0.02);
}

}  // namespace
