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

#include <functional>
#include <vector>

namespace qest {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1.
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// Splits the interval with the largest error estimate until the total
/// estimate falls below max(abs_tol, rel_tol * |value|) or `max_intervals`
/// is reached; the result reports which happened.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     double abs_tol, double rel_tol = 0.0, int max_intervals = 4000);

}  // namespace qest
