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
#include <string>
#include <vector>

#include "qest/core.hpp"

namespace qest {

/// Default cap on the number of copies for which outcomes are enumerated.
inline constexpr int kDefaultEnumerationLimit = 2048;

/// Slack on the z component of states fed to the equatorial (x, y) scheme.
inline constexpr double kEquatorialTolerance = 1e-9;

/// Result of measuring sigma_x on n_per_axis copies and sigma_y on another
/// n_per_axis copies: kx, ky count the +1 outcomes.
class LocalOutcome {
   public:
    LocalOutcome(int n_per_axis, int kx, int ky);

    int n_per_axis() const { return n_; }
    int kx() const { return kx_; }
    int ky() const { return ky_; }
    double alpha_x() const { return static_cast<double>(kx_) / n_; }
    double alpha_y() const { return static_cast<double>(ky_) / n_; }

   private:
    int n_;
    int kx_;
    int ky_;
};

/// Half-integer index of an irreducible block of the symmetric subspace,
/// stored as twice its value so arithmetic stays exact.
class SpinIndex {
   public:
    explicit SpinIndex(int twice) : twice_(twice) {}
    int twice() const { return twice_; }
    double value() const { return 0.5 * twice_; }
    bool operator==(const SpinIndex&) const = default;

   private:
    int twice_;
};

/// Spin indices k = (N mod 2)/2, ..., N/2 for N copies.
std::vector<SpinIndex> spin_indices(int total_copies);

struct CollectiveOutcome {
    SpinIndex k;
    Vec3 direction;  // unit vector m
};

enum class SchemeKind { LocalXY, Collective };

std::string to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(const std::string& text);

struct SchemeSpec {
    SchemeKind kind = SchemeKind::LocalXY;
    int total_copies = 2;

    /// Throws std::invalid_argument unless N >= 1 and, for LocalXY, N is even.
    void validate() const;
    int copies_per_axis() const { return total_copies / 2; }
};

/// log C(n, k) via log-gamma.
double log_binomial(int n, int k);

/// log of C(n, k) ((1+r)/2)^k ((1-r)/2)^(n-k) for one measurement axis with
/// Bloch component r; 0^0 = 1.
double axis_log_probability(int n, int k, double r);

/// Probability of the count pair in `outcome` for an equatorial state.
double local_probability(const LocalOutcome& outcome, const BlochVector& state);
double local_log_probability(const LocalOutcome& outcome, const BlochVector& state);

/// c_k = C(N, N/2 + k) (2k + 1)^2 / (N/2 + k + 1).
double collective_weight(SpinIndex k, int total_copies);
double log_collective_weight(SpinIndex k, int total_copies);

/// Density of the collective outcome (k, m) with respect to counting measure
/// in k and the normalized measure dm on the sphere:
/// c_k ((1 - r^2)/4)^(N/2 - k) ((1 + r.m)/2)^(2k).
double collective_probability(const CollectiveOutcome& outcome, int total_copies, const BlochVector& state);
double collective_log_probability(const CollectiveOutcome& outcome, int total_copies, const BlochVector& state);

/// Probability of block k after integrating the direction out, for a state
/// of Bloch radius r. Sums to one over k.
double collective_block_probability(SpinIndex k, int total_copies, double r);

/// Enumerable outcome set of a scheme. LocalXY lists all (n+1)^2 count
/// pairs; Collective lists the spin indices and a direction grid whose
/// weights integrate dm.
struct OutcomeSet {
    std::vector<LocalOutcome> local;
    std::vector<SpinIndex> spins;
    std::vector<AngularNode> directions;

    std::size_t size() const { return local.empty() ? spins.size() * directions.size() : local.size(); }
};

OutcomeSet enumerate_outcomes(const SchemeSpec& spec, int angular_order = 16,
                              int enumeration_limit = kDefaultEnumerationLimit);

}  // namespace qest
