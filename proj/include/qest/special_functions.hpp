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

namespace qest::special {

/// Gamma function for x > 0 or non-integer x < 0 (Lanczos, g = 7).
double gamma(double x);
/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

double erfc(double x);
/// Scaled complementary error function exp(x^2) erfc(x); finite for all
/// x >= 0 and decays like 1 / (x sqrt(pi)).
double erfcx(double x);

/// Modified Bessel functions of real order nu >= 0 and argument x > 0.
/// Temme's series for x < 2, Steed's continued fraction otherwise; I_nu is
/// recovered from the Wronskian and the CF1 ratio I'_nu / I_nu.
double bessel_i(double nu, double x);
double bessel_k(double nu, double x);
/// exp(-x) I_nu(x)
double bessel_i_scaled(double nu, double x);
/// exp(x) K_nu(x)
double bessel_k_scaled(double nu, double x);

struct BesselIK {
    double i_scaled;   // exp(-x) I_nu(x)
    double k_scaled;   // exp(x) K_nu(x)
    double di_scaled;  // exp(-x) I'_nu(x)
    double dk_scaled;  // exp(x) K'_nu(x)
};
BesselIK bessel_ik_scaled(double nu, double x);

/// sqrt(2 pi x) exp(-x) I_nu(x) - 1 from the large-x asymptotic series,
/// summed to its smallest term. Free of the cancellation that the direct
/// difference suffers; intended for x >= 20.
double bessel_i_asymptotic_excess(double nu, double x);

}  // namespace qest::special
