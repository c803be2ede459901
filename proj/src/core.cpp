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

#include "qest/core.hpp"

#include <algorithm>
#include <numbers>

#include "qest/quadrature.hpp"

namespace qest {

BlochVector::BlochVector(double x, double y, double z) : c_{x, y, z} {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("BlochVector: non-finite component");
    }
    norm_ = std::hypot(x, y, z);
    if (norm_ > 1.0 + kBlochTolerance) {
        throw std::invalid_argument("BlochVector: |r| = " + std::to_string(norm_) + " exceeds 1");
    }
    if (norm_ > 1.0) {
        for (double& v : c_) v /= norm_;
        norm_ = 1.0;
    }
}

EmbeddedBloch::EmbeddedBloch(const BlochVector& spatial) : spatial_(spatial) {
    const double r = spatial.norm();
    time_ = std::sqrt(std::max(0.0, (1.0 - r) * (1.0 + r)));
}

EmbeddedBloch EmbeddedBloch::from_components(const Vec4& c) {
    const double n = norm(c);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kBlochTolerance) {
        throw std::invalid_argument("EmbeddedBloch: 4-norm deviates from 1");
    }
    if (c[0] < -kBlochTolerance) {
        throw std::invalid_argument("EmbeddedBloch: negative time component");
    }
    const double t = std::max(0.0, c[0] / n);
    BlochVector v(c[1] / n, c[2] / n, c[3] / n);
    // Keep the invariant time^2 + r^2 = 1 tight even after clamping.
    const double r = v.norm();
    const double rest = std::sqrt(std::max(0.0, (1.0 - r) * (1.0 + r)));
    return EmbeddedBloch(std::abs(rest - t) < 1e-12 ? t : rest, v);
}

EmbeddedBloch EmbeddedBloch::from_parts(double time, const BlochVector& spatial) {
    if (time < 0.0) throw std::invalid_argument("EmbeddedBloch: negative time component");
    return EmbeddedBloch(time, spatial);
}

double EmbeddedBloch::dot(const EmbeddedBloch& other) const {
    return time_ * other.time_ + qest::dot(spatial_.components(), other.spatial_.components());
}

FidelityValue::FidelityValue(double value) {
    if (std::isnan(value)) throw std::invalid_argument("FidelityValue: NaN");
    value_ = std::clamp(value, 0.0, 1.0);
}

FidelityValue fidelity(const EmbeddedBloch& state, const EmbeddedBloch& guess) {
    return FidelityValue(0.5 * (1.0 + state.dot(guess)));
}

std::string to_string(PriorKind kind) {
    return kind == PriorKind::FullBures ? "full" : "equatorial";
}

PriorKind parse_prior_kind(const std::string& text) {
    if (text == "full" || text == "full-bures") return PriorKind::FullBures;
    if (text == "equatorial" || text == "equatorial-bures") return PriorKind::EquatorialBures;
    throw std::invalid_argument("unknown prior '" + text + "' (expected full|equatorial)");
}

std::vector<AngularNode> sphere_grid(int order) {
    if (order < 1) throw std::invalid_argument("sphere_grid: order must be >= 1");
    const GaussRule polar = gauss_legendre(order);
    const int n_phi = 2 * order;
    std::vector<AngularNode> grid;
    grid.reserve(static_cast<std::size_t>(order) * n_phi);
    for (int i = 0; i < order; ++i) {
        const double ct = polar.nodes[i];
        const double st = std::sqrt(std::max(0.0, (1.0 - ct) * (1.0 + ct)));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            grid.push_back({{st * std::cos(phi), st * std::sin(phi), ct}, 0.5 * polar.weights[i] / n_phi});
        }
    }
    return grid;
}

std::vector<AngularNode> circle_grid(int order) {
    if (order < 1) throw std::invalid_argument("circle_grid: order must be >= 1");
    std::vector<AngularNode> grid;
    grid.reserve(order);
    for (int j = 0; j < order; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / order;
        grid.push_back({{std::cos(theta), std::sin(theta), 0.0}, 1.0 / order});
    }
    return grid;
}

double Prior::total_weight() const {
    double radial = 0.0, angular = 0.0;
    for (const auto& n : radial_) radial += n.weight;
    for (const auto& n : angular_) angular += n.weight;
    return radial * angular;
}

Prior build_prior(PriorKind kind, int radial_order, int angular_order) {
    if (radial_order < 2 || angular_order < 2) {
        throw std::invalid_argument("build_prior: quadrature orders must be >= 2");
    }
    Prior prior;
    prior.kind_ = kind;
    prior.radial_order_ = radial_order;
    prior.angular_order_ = angular_order;

    const GaussRule rule = gauss_legendre(radial_order, 0.0, std::numbers::pi / 2);
    prior.radial_.reserve(radial_order);
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        const double u = rule.nodes[i];
        const double s = std::sin(u);
        const double w = rule.weights[i] * (kind == PriorKind::FullBures ? s * s : s);
        prior.radial_.push_back({s, std::cos(u), w});
        total += w;
    }
    for (auto& n : prior.radial_) n.weight /= total;

    prior.angular_ = kind == PriorKind::FullBures ? sphere_grid(angular_order) : circle_grid(angular_order);
    return prior;
}

Vec4 prior_mean(const Prior& prior) {
    Vec4 mean{};
    prior.for_each_node([&](const EmbeddedBloch& s, double w) {
        const Vec4 c = s.components();
        for (int i = 0; i < 4; ++i) mean[i] += w * c[i];
    });
    return mean;
}

FidelityValue random_guess_fidelity(const Prior& prior) {
    const Vec4 mean = prior_mean(prior);
    return FidelityValue(0.5 * (1.0 + dot(mean, mean)));
}

}  // namespace qest
