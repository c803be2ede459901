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

#include "qest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualTolerance = 1e-12;
constexpr int kScanIntervals = 512;

double ml_residual(double phi, double magnitude, double angle) {
    return std::cos(2.0 * phi) - magnitude * std::cos(angle + phi);
}

double ml_residual_derivative(double phi, double magnitude, double angle) {
    return -2.0 * std::sin(2.0 * phi) + magnitude * std::sin(angle + phi);
}

// Per-copy log-likelihood of the pure equatorial state at angle phi given
// the frequencies implied by (R, gamma).
double boundary_log_likelihood(double phi, double magnitude, double angle) {
    const double ax = magnitude * std::cos(angle);
    const double ay = magnitude * std::sin(angle);
    auto axis = [](double a, double r) {
        const double up = 0.5 * (1.0 + a);
        const double down = 0.5 * (1.0 - a);
        double value = 0.0;
        if (up > 1e-14) value += up * (r <= -1.0 ? -std::numeric_limits<double>::infinity() : std::log1p(r));
        if (down > 1e-14) value += down * (r >= 1.0 ? -std::numeric_limits<double>::infinity() : std::log1p(-r));
        return value;
    };
    return axis(ax, std::cos(phi)) + axis(ay, std::sin(phi));
}

std::optional<double> newton(double seed, double lo, double hi, double magnitude, double angle) {
    double phi = seed;
    for (int iter = 0; iter < 60; ++iter) {
        const double g = ml_residual(phi, magnitude, angle);
        if (std::abs(g) < 1e-15) break;
        const double dg = ml_residual_derivative(phi, magnitude, angle);
        if (dg == 0.0) return std::nullopt;
        const double next = phi - g / dg;
        if (!(next > lo && next <= hi)) return std::nullopt;
        if (std::abs(next - phi) < 1e-16) {
            phi = next;
            break;
        }
        phi = next;
    }
    if (std::abs(ml_residual(phi, magnitude, angle)) >= kResidualTolerance) return std::nullopt;
    return phi;
}

double bisect(double lo, double hi, double magnitude, double angle) {
    double glo = ml_residual(lo, magnitude, angle);
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = ml_residual(mid, magnitude, angle);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Optimal: return "optimal";
        case EstimatorKind::MaximumLikelihood: return "ml";
        case EstimatorKind::Tomography: return "tomography";
        case EstimatorKind::Random: return "random";
    }
    return "unknown";
}

EstimatorKind parse_estimator_kind(const std::string& text) {
    if (text == "optimal") return EstimatorKind::Optimal;
    if (text == "ml" || text == "maximum-likelihood") return EstimatorKind::MaximumLikelihood;
    if (text == "tomography") return EstimatorKind::Tomography;
    if (text == "random") return EstimatorKind::Random;
    throw std::invalid_argument("unknown estimator '" + text + "' (expected optimal|ml|tomography|random)");
}

std::optional<EmbeddedBloch> TomographicGuess::embedded() const {
    if (!physical) return std::nullopt;
    const double r = std::min(magnitude, 1.0);
    return EmbeddedBloch(BlochVector(r * std::cos(angle), r * std::sin(angle), 0.0));
}

TomographicGuess tomography_estimate(const LocalOutcome& outcome) {
    const int n = outcome.n_per_axis();
    const double ax = static_cast<double>(2 * outcome.kx() - n) / n;
    const double ay = static_cast<double>(2 * outcome.ky() - n) / n;
    TomographicGuess guess;
    guess.magnitude = std::hypot(ax, ay);
    guess.angle = guess.magnitude == 0.0 ? 0.0 : std::atan2(ay, ax);
    guess.physical = guess.magnitude <= 1.0 + 1e-12;
    return guess;
}

double solve_ml_angle(double magnitude, double angle) {
    if (!(magnitude > 1.0)) throw std::invalid_argument("solve_ml_angle: needs R > 1");
    const double lo = angle - kPi / 4;
    const double hi = angle + kPi / 4;
    std::vector<double> roots;

    const double s2 = std::sin(2.0 * angle);
    if (std::abs(s2) > 1e-6) {
        const double seed = angle - (magnitude - 1.0) * std::cos(2.0 * angle) / s2;
        if (seed > lo && seed <= hi) {
            if (auto root = newton(seed, lo, hi, magnitude, angle)) roots.push_back(*root);
        }
    }

    const double step = (hi - lo) / kScanIntervals;
    double a = lo;
    double ga = ml_residual(a, magnitude, angle);
    for (int i = 1; i <= kScanIntervals; ++i) {
        const double b = (i == kScanIntervals) ? hi : lo + i * step;
        const double gb = ml_residual(b, magnitude, angle);
        if (gb == 0.0) {
            roots.push_back(b);
        } else if ((ga < 0.0) != (gb < 0.0) && ga != 0.0) {
            double phi = bisect(a, b, magnitude, angle);
            // A couple of Newton steps polish the bisection result.
            for (int k = 0; k < 3; ++k) {
                const double dg = ml_residual_derivative(phi, magnitude, angle);
                if (dg == 0.0) break;
                const double next = phi - ml_residual(phi, magnitude, angle) / dg;
                if (!(next >= a && next <= b)) break;
                phi = next;
            }
            roots.push_back(phi);
        }
        a = b;
        ga = gb;
    }

    double best = std::numeric_limits<double>::quiet_NaN();
    double best_like = -std::numeric_limits<double>::infinity();
    for (double phi : roots) {
        if (std::abs(ml_residual(phi, magnitude, angle)) >= kResidualTolerance) continue;
        const double like = boundary_log_likelihood(phi, magnitude, angle);
        const bool better = std::isnan(best) || like > best_like + 1e-12 ||
                            (std::abs(like - best_like) <= 1e-12 && std::abs(phi - angle) < std::abs(best - angle));
        if (better) {
            best = phi;
            best_like = like;
        }
    }
    if (std::isnan(best)) {
        throw NumericalError("ml_estimate: no root of cos(2 Phi) = R cos(gamma + Phi) near gamma = " +
                             std::to_string(angle) + " for R = " + std::to_string(magnitude));
    }
    return best;
}

MLGuess ml_estimate(const LocalOutcome& outcome) {
    const TomographicGuess tomo = tomography_estimate(outcome);
    if (tomo.physical) return {*tomo.embedded(), std::nullopt};
    const double phi = solve_ml_angle(tomo.magnitude, tomo.angle);
    return {EmbeddedBloch::from_parts(0.0, BlochVector(std::cos(phi), std::sin(phi), 0.0)), phi};
}

std::optional<BayesGuess> normalize_bayes_vector(const VVector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) return std::nullopt;
    const Vec4& c = v.components;
    return BayesGuess{EmbeddedBloch::from_components({c[0] / n, c[1] / n, c[2] / n, c[3] / n}), n};
}

EmbeddedBloch random_estimate(const Prior& prior) {
    auto guess = optimal_estimate(prior, [](const BlochVector&) { return 1.0; });
    if (!guess) throw NumericalError("random_estimate: prior has no mass");
    return guess->guess;
}

}  // namespace qest
