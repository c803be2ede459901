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

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qest {

/// Slack on |r| <= 1. Norms in (1, 1 + kBlochTolerance] are projected back
/// onto the sphere; anything larger is rejected.
inline constexpr double kBlochTolerance = 1e-9;

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }
inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

/// Raised when a numerical procedure fails to reach its stated tolerance.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bloch vector of a qubit state, rho = (1 + r.sigma) / 2, with |r| <= 1.
class BlochVector {
   public:
    BlochVector() = default;
    BlochVector(double x, double y, double z);
    explicit BlochVector(const Vec3& components) : BlochVector(components[0], components[1], components[2]) {}

    double x() const { return c_[0]; }
    double y() const { return c_[1]; }
    double z() const { return c_[2]; }
    const Vec3& components() const { return c_; }
    double norm() const { return norm_; }

   private:
    Vec3 c_{};
    double norm_ = 0.0;
};

/// A qubit state as the unit 4-vector (sqrt(1 - r^2), r). The Euclidean dot
/// product of two embeddings is twice their fidelity minus one.
class EmbeddedBloch {
   public:
    /// The maximally mixed state (1, 0, 0, 0).
    EmbeddedBloch() = default;
    explicit EmbeddedBloch(const BlochVector& spatial);

    /// Builds from raw components. The 4-norm must be within kBlochTolerance
    /// of one and the time component must not be negative beyond it; the
    /// result is renormalized exactly.
    static EmbeddedBloch from_components(const Vec4& components);

    /// Trusted constructor for callers that already know sqrt(1 - r^2) more
    /// accurately than it can be recomputed (e.g. r = sin u, time = cos u).
    static EmbeddedBloch from_parts(double time, const BlochVector& spatial);

    double time() const { return time_; }
    const BlochVector& spatial() const { return spatial_; }
    Vec4 components() const { return {time_, spatial_.x(), spatial_.y(), spatial_.z()}; }
    double dot(const EmbeddedBloch& other) const;

   private:
    EmbeddedBloch(double time, const BlochVector& spatial) : time_(time), spatial_(spatial) {}

    double time_ = 1.0;
    BlochVector spatial_{};
};

/// A fidelity, clamped into [0, 1] on construction.
class FidelityValue {
   public:
    FidelityValue() = default;
    explicit FidelityValue(double value);
    double value() const { return value_; }

   private:
    double value_ = 0.0;
};

/// Bures fidelity of two qubit states, (1 + r.R + sqrt(1-r^2) sqrt(1-R^2)) / 2.
FidelityValue fidelity(const EmbeddedBloch& state, const EmbeddedBloch& guess);

enum class PriorKind { FullBures, EquatorialBures };

std::string to_string(PriorKind kind);
PriorKind parse_prior_kind(const std::string& text);

struct RadialNode {
    double r;
    double time;  // sqrt(1 - r^2), computed as cos u
    double weight;
};

struct AngularNode {
    Vec3 direction;
    double weight;
};

/// Unit-sphere grid: Gauss-Legendre in cos(theta) times 2*order uniform
/// azimuths. Weights sum to one (normalized measure dn).
std::vector<AngularNode> sphere_grid(int order);

/// Great-circle grid in the z = 0 plane: `order` uniform angles, weights 1/order.
std::vector<AngularNode> circle_grid(int order);

/// A-priori Bures distribution discretized as a product grid. Radial nodes
/// live in u with r = sin u, which turns r^2 dr / sqrt(1 - r^2) into
/// sin^2 u du (full ball) and r dr / sqrt(1 - r^2) into sin u du (equatorial
/// disk), so Gauss-Legendre in u converges spectrally.
class Prior {
   public:
    PriorKind kind() const { return kind_; }
    int radial_order() const { return radial_order_; }
    int angular_order() const { return angular_order_; }
    std::span<const RadialNode> radial_nodes() const { return radial_; }
    std::span<const AngularNode> angular_nodes() const { return angular_; }
    std::size_t node_count() const { return radial_.size() * angular_.size(); }

    /// Calls fn(EmbeddedBloch state, double weight) for every product node.
    template <class Fn>
    void for_each_node(Fn&& fn) const {
        for (const RadialNode& rn : radial_) {
            for (const AngularNode& an : angular_) {
                BlochVector v(rn.r * an.direction[0], rn.r * an.direction[1], rn.r * an.direction[2]);
                fn(EmbeddedBloch::from_parts(rn.time, v), rn.weight * an.weight);
            }
        }
    }

    /// Sum of all node weights (one up to rounding).
    double total_weight() const;

   private:
    friend Prior build_prior(PriorKind kind, int radial_order, int angular_order);

    PriorKind kind_ = PriorKind::FullBures;
    int radial_order_ = 0;
    int angular_order_ = 0;
    std::vector<RadialNode> radial_;
    std::vector<AngularNode> angular_;
};

/// Both orders must be at least 2. For FullBures `angular_order` is the
/// number of polar Gauss nodes (azimuth uses twice as many); for
/// EquatorialBures it is the number of uniform angles on the circle.
Prior build_prior(PriorKind kind, int radial_order, int angular_order);

/// Integral of the embedded state over the prior, i.e. the Bayes vector of an
/// experiment that yields no information.
Vec4 prior_mean(const Prior& prior);

/// Average fidelity of guessing a state drawn independently from the prior:
/// (1 + |prior_mean|^2) / 2. Equals 1/2 + 8/(9 pi^2) for FullBures and 5/8
/// for EquatorialBures.
FidelityValue random_guess_fidelity(const Prior& prior);

}  // namespace qest
