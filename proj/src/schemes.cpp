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

#include "qest/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qest/special_functions.hpp"

namespace qest {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// count * log(base) with 0 * log(0) = 0.
double xlogy(double count, double log_base) {
    if (count == 0.0) return 0.0;
    return count * log_base;
}

void check_spin(SpinIndex k, int total_copies) {
    if (k.twice() < 0 || k.twice() > total_copies || (total_copies - k.twice()) % 2 != 0) {
        throw std::invalid_argument("spin index k = " + std::to_string(k.value()) + " out of range for N = " +
                                    std::to_string(total_copies));
    }
}

}  // namespace

LocalOutcome::LocalOutcome(int n_per_axis, int kx, int ky) : n_(n_per_axis), kx_(kx), ky_(ky) {
    if (n_per_axis < 1) throw std::invalid_argument("LocalOutcome: copies per axis must be >= 1");
    if (kx < 0 || kx > n_per_axis || ky < 0 || ky > n_per_axis) {
        throw std::invalid_argument("LocalOutcome: counts out of range [0, " + std::to_string(n_per_axis) + "]");
    }
}

std::vector<SpinIndex> spin_indices(int total_copies) {
    if (total_copies < 1) throw std::invalid_argument("spin_indices: N must be >= 1");
    std::vector<SpinIndex> out;
    for (int twice = total_copies % 2; twice <= total_copies; twice += 2) out.emplace_back(twice);
    return out;
}

std::string to_string(SchemeKind kind) { return kind == SchemeKind::LocalXY ? "local-xy" : "collective"; }

SchemeKind parse_scheme_kind(const std::string& text) {
    if (text == "local-xy" || text == "local") return SchemeKind::LocalXY;
    if (text == "collective") return SchemeKind::Collective;
    throw std::invalid_argument("unknown scheme '" + text + "' (expected local-xy|collective)");
}

void SchemeSpec::validate() const {
    if (total_copies < 1) throw std::invalid_argument("number of copies must be >= 1");
    if (kind == SchemeKind::LocalXY && total_copies % 2 != 0) {
        throw std::invalid_argument("local-xy needs an even number of copies (N = 2 x copies per axis)");
    }
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("log_binomial: k out of range");
    if (k == 0 || k == n) return 0.0;
    return special::log_gamma(n + 1.0) - special::log_gamma(k + 1.0) - special::log_gamma(n - k + 1.0);
}

double axis_log_probability(int n, int k, double r) {
    // log((1 +- r)/2) through log1p keeps precision for small |r|.
    const double up = r <= -1.0 ? kNegInf : std::log1p(r) - kLn2;
    const double down = r >= 1.0 ? kNegInf : std::log1p(-r) - kLn2;
    return log_binomial(n, k) + xlogy(k, up) + xlogy(n - k, down);
}

double local_log_probability(const LocalOutcome& outcome, const BlochVector& state) {
    if (std::abs(state.z()) > kEquatorialTolerance) {
        throw std::invalid_argument("local_probability: state is not in the equatorial plane");
    }
    const int n = outcome.n_per_axis();
    return axis_log_probability(n, outcome.kx(), state.x()) + axis_log_probability(n, outcome.ky(), state.y());
}

double local_probability(const LocalOutcome& outcome, const BlochVector& state) {
    return std::exp(local_log_probability(outcome, state));
}

double log_collective_weight(SpinIndex k, int total_copies) {
    check_spin(k, total_copies);
    const int up = (total_copies + k.twice()) / 2;  // N/2 + k
    return log_binomial(total_copies, up) + 2.0 * std::log(k.twice() + 1.0) - std::log(up + 1.0);
}

double collective_weight(SpinIndex k, int total_copies) { return std::exp(log_collective_weight(k, total_copies)); }

double collective_log_probability(const CollectiveOutcome& outcome, int total_copies, const BlochVector& state) {
    const double m_norm = norm(outcome.direction);
    if (std::abs(m_norm - 1.0) > 1e-9) throw std::invalid_argument("collective_probability: |m| != 1");
    const double r = state.norm();
    const double rm = dot(state.components(), outcome.direction) / m_norm;
    const int down = (total_copies - outcome.k.twice()) / 2;  // N/2 - k
    const double mixed = (r >= 1.0) ? kNegInf : std::log1p(-r) + std::log1p(r) - 2.0 * kLn2;
    const double aligned = (rm <= -1.0) ? kNegInf : std::log1p(rm) - kLn2;
    return log_collective_weight(outcome.k, total_copies) + xlogy(down, mixed) + xlogy(outcome.k.twice(), aligned);
}

double collective_probability(const CollectiveOutcome& outcome, int total_copies, const BlochVector& state) {
    return std::exp(collective_log_probability(outcome, total_copies, state));
}

double collective_block_probability(SpinIndex k, int total_copies, double r) {
    check_spin(k, total_copies);
    if (r < 0.0 || r > 1.0 + kBlochTolerance) throw std::invalid_argument("collective_block_probability: bad r");
    r = std::min(r, 1.0);
    const int n = k.twice();
    const int down = (total_copies - n) / 2;
    const double mixed = (r >= 1.0) ? kNegInf : std::log1p(-r) + std::log1p(r) - 2.0 * kLn2;
    // int dm ((1 + r t)/2)^n = (a^(n+1) - b^(n+1)) / ((n+1) r), a,b = (1 +- r)/2,
    // written as a^(n+1) [1 - (b/a)^(n+1)] / ((n+1) r) with expm1 to survive r -> 0.
    double log_angular;
    if (r < 1e-300) {
        log_angular = -n * kLn2;
    } else {
        const double log_a = std::log1p(r) - kLn2;
        const double log_ratio = (r >= 1.0) ? kNegInf : std::log1p(-r) - std::log1p(r);
        const double one_minus = -std::expm1((n + 1.0) * log_ratio);
        log_angular = (n + 1.0) * log_a + std::log(one_minus / ((n + 1.0) * r));
    }
    return std::exp(log_collective_weight(k, total_copies) + xlogy(down, mixed) + log_angular);
}

OutcomeSet enumerate_outcomes(const SchemeSpec& spec, int angular_order, int enumeration_limit) {
    spec.validate();
    if (spec.total_copies > enumeration_limit) {
        throw std::invalid_argument("N = " + std::to_string(spec.total_copies) + " exceeds the enumeration limit " +
                                    std::to_string(enumeration_limit));
    }
    OutcomeSet set;
    if (spec.kind == SchemeKind::LocalXY) {
        const int n = spec.copies_per_axis();
        set.local.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
        for (int kx = 0; kx <= n; ++kx) {
            for (int ky = 0; ky <= n; ++ky) set.local.emplace_back(n, kx, ky);
        }
    } else {
        set.spins = spin_indices(spec.total_copies);
        set.directions = sphere_grid(angular_order);
    }
    return set;
}

}  // namespace qest
