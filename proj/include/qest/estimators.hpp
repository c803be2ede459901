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

#include <optional>
#include <string>

#include "qest/core.hpp"
#include "qest/schemes.hpp"

namespace qest {

enum class EstimatorKind { Optimal, MaximumLikelihood, Tomography, Random };

std::string to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(const std::string& text);

/// Raw tomographic reconstruction R cos(gamma) = 2 alpha_x - 1,
/// R sin(gamma) = 2 alpha_y - 1, z = 0.
struct TomographicGuess {
    double magnitude = 0.0;  // R
    double angle = 0.0;      // gamma
    bool physical = true;    // R <= 1

    /// The guess as a state; empty when the raw data is unphysical.
    std::optional<EmbeddedBloch> embedded() const;
};

TomographicGuess tomography_estimate(const LocalOutcome& outcome);

struct MLGuess {
    EmbeddedBloch guess;
    /// Angle of the pure boundary state, present only when R > 1.
    std::optional<double> boundary_angle;
};

/// Maximum-likelihood estimate on the equatorial disk. Inside the disk it is
/// the tomographic guess; outside it is the pure state at the angle Phi that
/// solves cos(2 Phi) = R cos(gamma + Phi).
MLGuess ml_estimate(const LocalOutcome& outcome);

/// Root of cos(2 Phi) = R cos(gamma + Phi) for R > 1 selected by likelihood
/// among the roots in (gamma - pi/4, gamma + pi/4]. Newton is seeded at
/// gamma - (R - 1) cot(2 gamma) unless sin(2 gamma) is too small for the
/// seed to mean anything; a bracketing scan with bisection finds the rest.
/// Throws NumericalError if no root with residual < 1e-12 is found.
double solve_ml_angle(double magnitude, double angle);

/// Unnormalized Bayes vector V(x) = int d rho (sqrt(1 - r^2), r) p(x | r).
struct VVector {
    Vec4 components{};
    double norm() const { return qest::norm(components); }
};

struct BayesGuess {
    EmbeddedBloch guess;
    double evidence_norm;  // |V(x)|
};

/// R(x) = V / |V|. Empty when |V| = 0: there is no evidence to normalize and
/// no guess is fabricated.
std::optional<BayesGuess> normalize_bayes_vector(const VVector& v);

/// V(x) by quadrature over the prior for a likelihood p(x | r) given as a
/// callable on BlochVector.
template <class Likelihood>
VVector bayes_vector(const Prior& prior, Likelihood&& likelihood) {
    VVector v;
    prior.for_each_node([&](const EmbeddedBloch& state, double weight) {
        const double pw = weight * likelihood(state.spatial());
        const Vec4 c = state.components();
        for (int i = 0; i < 4; ++i) v.components[i] += pw * c[i];
    });
    return v;
}

/// Optimal (fidelity-maximizing) guess for one outcome.
template <class Likelihood>
std::optional<BayesGuess> optimal_estimate(const Prior& prior, Likelihood&& likelihood) {
    return normalize_bayes_vector(bayes_vector(prior, std::forward<Likelihood>(likelihood)));
}

/// The optimal guess when the data carries no information about the state,
/// i.e. optimal_estimate under a constant likelihood. (1, 0, 0, 0) for both
/// Bures priors.
EmbeddedBloch random_estimate(const Prior& prior);

}  // namespace qest
