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

#include "qest/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qest {

namespace {

constexpr double kPi = std::numbers::pi;

// Unit vector orthogonal to a.
Vec3 orthogonal(const Vec3& a) {
    const Vec3 e = std::abs(a[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const double d = dot(a, e);
    Vec3 b{e[0] - d * a[0], e[1] - d * a[1], e[2] - d * a[2]};
    const double n = norm(b);
    return {b[0] / n, b[1] / n, b[2] / n};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

EmbeddedBloch sample_prior_state(PriorKind kind, Rng& rng) {
    if (kind == PriorKind::EquatorialBures) {
        // r dr / sqrt(1 - r^2) is uniform in t = sqrt(1 - r^2).
        const double t = rng.uniform();
        const double r = std::sqrt((1.0 - t) * (1.0 + t));
        const double phi = 2.0 * kPi * rng.uniform();
        return EmbeddedBloch::from_parts(t, BlochVector(r * std::cos(phi), r * std::sin(phi), 0.0));
    }
    // r = sin u with density proportional to sin^2 u on [0, pi/2].
    double u;
    do {
        u = 0.5 * kPi * rng.uniform();
    } while (rng.uniform() >= std::sin(u) * std::sin(u));
    const double r = std::sin(u);
    const double cz = 2.0 * rng.uniform() - 1.0;
    const double sz = std::sqrt(std::max(0.0, (1.0 - cz) * (1.0 + cz)));
    const double phi = 2.0 * kPi * rng.uniform();
    return EmbeddedBloch::from_parts(std::cos(u),
                                     BlochVector(r * sz * std::cos(phi), r * sz * std::sin(phi), r * cz));
}

LocalOutcome sample_local_outcome(int n_per_axis, const BlochVector& state, Rng& rng) {
    const double px = 0.5 * (1.0 + state.x());
    const double py = 0.5 * (1.0 + state.y());
    int kx = 0, ky = 0;
    for (int i = 0; i < n_per_axis; ++i) {
        if (rng.uniform() < px) ++kx;
        if (rng.uniform() < py) ++ky;
    }
    return LocalOutcome(n_per_axis, kx, ky);
}

CollectiveOutcome sample_collective_outcome(int total_copies, const BlochVector& state, Rng& rng) {
    const double r = std::min(state.norm(), 1.0);
    const std::vector<SpinIndex> spins = spin_indices(total_copies);
    const double pick = rng.uniform();
    double acc = 0.0;
    SpinIndex k = spins.back();
    for (const SpinIndex& s : spins) {
        acc += collective_block_probability(s, total_copies, r);
        if (pick < acc) {
            k = s;
            break;
        }
    }

    // Cosine t between m and r: density ((1 + r t)/2)^n on [-1, 1], inverted
    // through s = (1 + r t)/2 between b = (1 - r)/2 and a = (1 + r)/2.
    const int n = k.twice();
    const double v = rng.uniform();
    double t;
    if (n == 0 || r < 1e-12) {
        t = 2.0 * v - 1.0;
    } else {
        const double a = 0.5 * (1.0 + r);
        const double ratio = std::exp((n + 1.0) * (std::log1p(-r) - std::log1p(r)));
        const double s = a * std::pow(ratio + v * (1.0 - ratio), 1.0 / (n + 1.0));
        t = std::clamp((2.0 * s - 1.0) / r, -1.0, 1.0);
    }
    const double phi = 2.0 * kPi * rng.uniform();

    const Vec3 axis = r < 1e-12 ? Vec3{0.0, 0.0, 1.0}
                                : Vec3{state.x() / state.norm(), state.y() / state.norm(), state.z() / state.norm()};
    const Vec3 e1 = orthogonal(axis);
    const Vec3 e2 = cross(axis, e1);
    const double st = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
    const double c1 = st * std::cos(phi), c2 = st * std::sin(phi);
    Vec3 m{};
    for (int i = 0; i < 3; ++i) m[i] = t * axis[i] + c1 * e1[i] + c2 * e2[i];
    const double mn = norm(m);
    return {k, {m[0] / mn, m[1] / mn, m[2] / mn}};
}

}  // namespace qest
