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

#pragma once

#include <cstddef>
#include <span>

#include "qest/evaluator.hpp"

namespace qest {

/// Im K_{1/4}(x e^{i pi}) = -sin(pi/4) K_{1/4}(x) - pi I_{1/4}(x), x > 0.
double im_k_quarter_negative(double x);
/// exp(-x) Im K_{1/4}(x e^{i pi}); bounded for large x.
double im_k_quarter_negative_scaled(double x);

/// Integrands of the three correction integrals of the local optimal-guess
/// asymptote, each on (0, inf). The first is the combination
/// e^x / (x^{3/4} Im K) + sqrt(2/pi) x^{-1/4}, whose two terms diverge on
/// their own.
double b1_integrand(double x);
double b2_integrand(double x);
double b3_integrand(double x);

struct AppendixIntegrals {
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    double error = 0.0;  // summed quadrature error estimate
};

/// Adaptive Gauss-Kronrod on (0, 1] with x = s^4 and on [1, inf) with
/// x = 1 + t/(1 - t); beyond x = 40 the first integrand is rewritten through
/// the large-x Bessel series so that its slow x^{-5/4} tail carries no
/// cancellation. Throws NumericalError if a piece misses abs_tol.
AppendixIntegrals appendix_integrals(double abs_tol = 1e-10);

struct AsymptoticConstants {
    double collective_coeff = 0.0;  // N (1 - F) limit for the collective scheme
    double xi_ml = 0.0;
    double xi_o = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

/// Gamma(1/4)^2 / (48 pi) (4 b1 + b2 - sqrt(2) b3).
double assemble_xi_optimal(double b1, double b2, double b3);
/// Gamma(1/4)^3 / (2^{5/4} 9 pi^2).
double xi_maximum_likelihood();
/// 3/4 + 4/(3 pi).
double collective_coefficient();

AsymptoticConstants constants();

struct ExponentFit {
    double exponent = 0.0;     // a in 1 - F = c / N^a
    double coefficient = 0.0;  // c
    double residual = 0.0;     // RMS residual of the log-log fit
    int n_min = 0;
    int n_max = 0;
    std::size_t points = 0;
};

/// Least squares of log(1 - F) = log c - a log N. Needs at least four
/// points, strictly increasing N, F < 1 and log(1 - F) non-increasing
/// (slack 1e-9); throws std::invalid_argument otherwise.
ExponentFit fit_exponent(std::span<const int> copies, std::span<const double> fidelities);
ExponentFit fit_exponent(const SweepResult& sweep);

}  // namespace qest
