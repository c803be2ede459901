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
#include <random>
#include <vector>

#include "qest/core.hpp"
#include "qest/schemes.hpp"

namespace qest {

/// Random stream for one Monte Carlo chunk. Streams are keyed by
/// (seed, stream) so every chunk is reproducible on its own.
class Rng {
   public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

   private:
    std::mt19937_64 engine_;
};

/// State drawn from the Bures prior of the given kind.
EmbeddedBloch sample_prior_state(PriorKind kind, Rng& rng);

/// One run of the local scheme: n_per_axis sigma_x and n_per_axis sigma_y
/// single-copy measurements, drawn copy by copy in the order x, y, x, y, ...
LocalOutcome sample_local_outcome(int n_per_axis, const BlochVector& state, Rng& rng);

/// Outcome of the collective measurement: block index k from its marginal,
/// then the direction m from the conditional density ((1 + r.m)/2)^(2k).
CollectiveOutcome sample_collective_outcome(int total_copies, const BlochVector& state, Rng& rng);

}  // namespace qest
