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

#include "qest/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qest/core.hpp"

namespace qest::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Taylor coefficients of 1 / Gamma(1 + z) about z = 0.
constexpr std::array<double, 23> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14};

double lanczos_sum(double z) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    return a;
}

// Temme's auxiliary functions for |mu| <= 1/2.
struct TemmeGammas {
    double gam1;  // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
    double gam2;  // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
    double gampl; // 1/Gamma(1+mu)
    double gammi; // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
    // even = sum c_{2i} mu^{2i}, odd = sum c_{2i+1} mu^{2i}
    double even = 0.0, odd = 0.0, pw = 1.0;
    std::size_t j = 0;
    for (; j + 1 < kRecipGamma.size(); j += 2) {
        even += kRecipGamma[j] * pw;
        odd += kRecipGamma[j + 1] * pw;
        pw *= mu * mu;
    }
    if (j < kRecipGamma.size()) even += kRecipGamma[j] * pw;
    const double gam1 = -odd;
    const double gam2 = even;
    return {gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1};
}

double erf_series(double x) {
    // erf x = 2/sqrt(pi) exp(-x^2) sum 2^n x^(2n+1) / (2n+1)!!; all terms positive.
    const double x2 = x * x;
    double term = x, sum = x;
    for (int n = 1; n < 500; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < kEps * sum) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// exp(x^2) erfc(x) for x^2 >= 1.5 from the continued fraction of
// Gamma(1/2, x^2).
double erfcx_continued_fraction(double x) {
    const double a = 0.5;
    const double X = x * x;
    double b = X + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return x * h / std::sqrt(std::numbers::pi);
    }
    throw NumericalError("erfcx: continued fraction did not converge");
}

constexpr double kSeriesSwitch = 1.5;  // on x^2

}  // namespace

double gamma(double x) {
    if (std::isnan(x)) throw std::domain_error("gamma: NaN");
    if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("gamma: pole at non-positive integer");
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be positive");
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double erfc(double x) {
    if (std::isnan(x)) throw std::domain_error("erfc: NaN");
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x * x < kSeriesSwitch) return 1.0 - erf_series(x);
    return erfcx_continued_fraction(x) * std::exp(-x * x);
}

double erfcx(double x) {
    if (std::isnan(x)) throw std::domain_error("erfcx: NaN");
    if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
    if (x * x < kSeriesSwitch) return std::exp(x * x) * (1.0 - erf_series(x));
    return erfcx_continued_fraction(x);
}

BesselIK bessel_ik_scaled(double nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel: x must be positive and finite");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::domain_error("bessel: nu must be non-negative");

    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    // CF1 for I'_nu / I_nu (modified Lentz).
    double h = nu * xi;
    if (h < kTiny) h = kTiny;
    {
        double b = xi2 * nu, d = 0.0, c = h;
        int i = 1;
        for (; i < kMaxIterations; ++i) {
            b += xi2;
            d = 1.0 / (b + d);
            c = b + 1.0 / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < kEps) break;
        }
        if (i >= kMaxIterations) throw NumericalError("bessel: CF1 did not converge");
    }

    // Downward recurrence of an unnormalized I from nu to mu.
    double ril = kTiny;
    double ripl = h * ril;
    const double ril1 = ril;
    const double rip1 = ripl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    const double f = ripl / ril;

    double kmu = 0.0, k1 = 0.0;  // exp(x) K_mu, exp(x) K_{mu+1}
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = std::numbers::pi * mu;
        const double fact0 = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = mu * d;
        const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(mu);
        double ff = fact0 * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i < kMaxIterations; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
            c *= d / i;
            p /= i - mu;
            q /= i + mu;
            const double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (i >= kMaxIterations) throw NumericalError("bessel: Temme series did not converge");
        const double ex = std::exp(x);
        kmu = sum * ex;
        k1 = sum1 * xi2 * ex;
    } else {
        // Steed's CF2.
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double hh = d, delh = d;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1, c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i < kMaxIterations; ++i) {
            a -= 2 * (i - 1);
            c = -a * c / i;
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            hh += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        if (i >= kMaxIterations) throw NumericalError("bessel: CF2 did not converge");
        hh *= a1;
        kmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
        k1 = kmu * (mu + x + 0.5 - hh) * xi;
    }

    const double kmup = mu * xi * kmu - k1;
    const double imu = xi / (f * kmu - kmup);
    const double inu = imu * ril1 / ril;
    const double dinu = imu * rip1 / ril;
    for (int i = 1; i <= nl; ++i) {
        const double kt = (mu + i) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = kt;
    }
    const double knu = kmu;
    const double dknu = nu * xi * kmu - k1;
    return {inu, knu, dinu, dknu};
}

double bessel_i_scaled(double nu, double x) { return bessel_ik_scaled(nu, x).i_scaled; }
double bessel_k_scaled(double nu, double x) { return bessel_ik_scaled(nu, x).k_scaled; }
double bessel_i(double nu, double x) { return bessel_i_scaled(nu, x) * std::exp(x); }
double bessel_k(double nu, double x) { return bessel_k_scaled(nu, x) * std::exp(-x); }

double bessel_i_asymptotic_excess(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_i_asymptotic_excess: x must be positive");
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 0.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 1000; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) >= last) break;  // asymptotic series: stop at the smallest term
        sum += term;
        last = std::abs(term);
        if (std::abs(term) < kEps * std::abs(sum)) break;
        if (term == 0.0) break;
    }
    return sum;
}

}  // namespace qest::special
