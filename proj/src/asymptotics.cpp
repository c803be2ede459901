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

#include "qest/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qest/quadrature.hpp"
#include "qest/special_functions.hpp"

namespace qest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNu = 0.25;
constexpr double kSinNuPi = std::numbers::sqrt2 / 2;  // sin(pi/4)
constexpr double kTailStart = 40.0;

// D(x) = -exp(-x) Im K_{1/4}(-x) = pi e^{-x} I + sin(pi/4) e^{-2x} e^{x} K.
double scaled_denominator(double x) {
    const special::BesselIK b = special::bessel_ik_scaled(kNu, x);
    return kPi * b.i_scaled + kSinNuPi * std::exp(-2.0 * x) * b.k_scaled;
}

// b1 integrand for large x as sqrt(2/pi) x^{-1/4} (S - 1)/S with
// S = sqrt(2/pi) x^{1/2} D(x).
double b1_tail(double x) {
    double excess = special::bessel_i_asymptotic_excess(kNu, x);
    if (x < 300.0) {
        excess += std::sqrt(2.0 * x / kPi) * kSinNuPi * std::exp(-2.0 * x) * special::bessel_k_scaled(kNu, x);
    }
    return std::sqrt(2.0 / kPi) * std::pow(x, -0.25) * excess / (1.0 + excess);
}

void check(const IntegrationResult& r, const char* what, double tol) {
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << ": adaptive quadrature stopped at error estimate " << r.error << " after " << r.intervals
            << " intervals (tolerance " << tol << ")";
        throw NumericalError(msg.str());
    }
}

// Integral of f over [0, 1] with x = s^4.
IntegrationResult near_zero(double (*f)(double), double tol) {
    return integrate_adaptive(
        [f](double s) {
            if (s <= 0.0) return 0.0;
            const double s3 = s * s * s;
            return 4.0 * s3 * f(s3 * s);
        },
        0.0, 1.0, tol);
}

// Integral of f over [1, inf) with x = 1 + t/(1 - t).
IntegrationResult to_infinity(double (*f)(double), double tol) {
    return integrate_adaptive(
        [f](double t) {
            if (t >= 1.0) return 0.0;
            const double u = 1.0 - t;
            return f(1.0 + t / u) / (u * u);
        },
        0.0, 1.0, tol);
}

}  // namespace

double im_k_quarter_negative(double x) {
    if (!(x > 0.0)) throw std::domain_error("im_k_quarter_negative: needs x > 0");
    return -kSinNuPi * special::bessel_k(kNu, x) - kPi * special::bessel_i(kNu, x);
}

double im_k_quarter_negative_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("im_k_quarter_negative_scaled: needs x > 0");
    return -scaled_denominator(x);
}

double b1_integrand(double x) {
    if (!(x > 0.0)) throw std::domain_error("b1_integrand: needs x > 0");
    if (x >= kTailStart) return b1_tail(x);
    return std::sqrt(2.0 / kPi) * std::pow(x, -0.25) - 1.0 / (std::pow(x, 0.75) * scaled_denominator(x));
}

double b2_integrand(double x) {
    if (!(x > 0.0)) throw std::domain_error("b2_integrand: needs x > 0");
    const double e = special::erfc(std::sqrt(2.0 * x));
    return -(e - 4.0) * e / (std::pow(x, 0.75) * scaled_denominator(x));
}

double b3_integrand(double x) {
    if (!(x > 0.0)) throw std::domain_error("b3_integrand: needs x > 0");
    const double e = special::erfcx(std::sqrt(2.0 * x));
    return e * e * std::exp(-2.0 * x) / (std::pow(x, 0.75) * special::bessel_k_scaled(kNu, x));
}

AppendixIntegrals appendix_integrals(double abs_tol) {
    const double tol = abs_tol / 4.0;
    AppendixIntegrals out;

    const IntegrationResult b1_head = near_zero(b1_integrand, tol);
    check(b1_head, "b1 on (0, 1]", tol);
    const IntegrationResult b1_mid = integrate_adaptive(b1_integrand, 1.0, kTailStart, tol);
    check(b1_mid, "b1 on [1, 40]", tol);
    // x = X t^{-4}: the x^{-5/4} tail becomes a bounded integrand on (0, 1].
    const IntegrationResult b1_far = integrate_adaptive(
        [](double t) {
            if (t <= 0.0) return 0.0;
            const double t4 = t * t * t * t;
            return b1_tail(kTailStart / t4) * 4.0 * kTailStart / (t4 * t);
        },
        0.0, 1.0, tol);
    check(b1_far, "b1 on [40, inf)", tol);
    out.b1 = b1_head.value + b1_mid.value + b1_far.value;

    const IntegrationResult b2_head = near_zero(b2_integrand, tol);
    check(b2_head, "b2 on (0, 1]", tol);
    const IntegrationResult b2_tail = to_infinity(b2_integrand, tol);
    check(b2_tail, "b2 on [1, inf)", tol);
    out.b2 = b2_head.value + b2_tail.value;

    const IntegrationResult b3_head = near_zero(b3_integrand, tol);
    check(b3_head, "b3 on (0, 1]", tol);
    const IntegrationResult b3_tail = to_infinity(b3_integrand, tol);
    check(b3_tail, "b3 on [1, inf)", tol);
    out.b3 = b3_head.value + b3_tail.value;

    out.error = b1_head.error + b1_mid.error + b1_far.error + b2_head.error + b2_tail.error + b3_head.error +
                b3_tail.error;
    return out;
}

double assemble_xi_optimal(double b1, double b2, double b3) {
    const double g = special::gamma(0.25);
    return g * g / (48.0 * kPi) * (4.0 * b1 + b2 - std::numbers::sqrt2 * b3);
}

double xi_maximum_likelihood() {
    const double g = special::gamma(0.25);
    return g * g * g / (std::pow(2.0, 1.25) * 9.0 * kPi * kPi);
}

double collective_coefficient() { return 0.75 + 4.0 / (3.0 * kPi); }

AsymptoticConstants constants() {
    const AppendixIntegrals b = appendix_integrals();
    AsymptoticConstants c;
    c.collective_coeff = collective_coefficient();
    c.xi_ml = xi_maximum_likelihood();
    c.b1 = b.b1;
    c.b2 = b.b2;
    c.b3 = b.b3;
    c.xi_o = assemble_xi_optimal(b.b1, b.b2, b.b3);
    return c;
}

ExponentFit fit_exponent(std::span<const int> copies, std::span<const double> fidelities) {
    if (copies.size() != fidelities.size()) throw std::invalid_argument("fit_exponent: size mismatch");
    if (copies.size() < 4) throw std::invalid_argument("fit_exponent: needs at least 4 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < copies.size(); ++i) {
        if (copies[i] < 1 || (i > 0 && copies[i] <= copies[i - 1])) {
            throw std::invalid_argument("fit_exponent: N must be positive and strictly increasing");
        }
        if (!(fidelities[i] < 1.0)) throw std::invalid_argument("fit_exponent: F = 1 has no logarithm");
        lx.push_back(std::log(static_cast<double>(copies[i])));
        ly.push_back(std::log1p(-fidelities[i]));
        if (i > 0 && ly[i] > ly[i - 1] + 1e-9) {
            throw std::invalid_argument("fit_exponent: log(1 - F) increases at N = " + std::to_string(copies[i]));
        }
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        ss += r * r;
    }
    ExponentFit fit;
    fit.exponent = -slope;
    fit.coefficient = std::exp(intercept);
    fit.residual = std::sqrt(ss / n);
    fit.n_min = copies.front();
    fit.n_max = copies.back();
    fit.points = copies.size();
    return fit;
}

ExponentFit fit_exponent(const SweepResult& sweep) {
    std::vector<int> n;
    std::vector<double> f;
    for (const FidelityReport& r : sweep.points) {
        n.push_back(r.copies());
        f.push_back(r.fidelity.value());
    }
    return fit_exponent(n, f);
}

}  // namespace qest
