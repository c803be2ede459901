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

#include <cstdint>
#include <string>

#include "qest/evaluator.hpp"

namespace qest {

/// How each single-copy measurement axis in the equatorial plane is chosen.
/// FixedXY alternates x, y, x, y, ... and reproduces the local scheme.
/// GreedyFidelity picks, among evenly spaced candidate axes, the one that
/// maximizes the fidelity of the optimal guess after that one measurement.
enum class AdaptivePolicy { FixedXY, GreedyFidelity };

std::string to_string(AdaptivePolicy policy);
AdaptivePolicy parse_adaptive_policy(const std::string& text);

struct AdaptiveOptions {
    /// Posterior grid on the equatorial disk.
    int radial_order = 64;
    int angular_order = 128;
    /// Candidate axes at angles pi j / candidate_axes, j = 0..candidate_axes-1.
    int candidate_axes = 180;
};

/// Monte Carlo over sequential measurements of N single copies drawn from
/// the equatorial Bures prior; the final guess is the optimal estimate on
/// the grid posterior. N must be even.
FidelityReport adaptive_local_fidelity(int total_copies, AdaptivePolicy policy, long samples, std::uint64_t seed,
                                       const AdaptiveOptions& options = {}, const ExecutionOptions& exec = {});

}  // namespace qest
