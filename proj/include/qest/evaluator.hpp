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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qest/core.hpp"
#include "qest/estimators.hpp"
#include "qest/parallel.hpp"
#include "qest/schemes.hpp"

namespace qest {

/// Prior grid orders for exact evaluation. With refine set, both orders are
/// doubled until F moves by less than refine_tolerance; NumericalError is
/// thrown if that does not happen within max_doublings.
struct QuadratureOptions {
    int radial_order = 128;
    int angular_order = 256;
    bool refine = true;
    double refine_tolerance = 1e-8;
    int max_doublings = 3;
    int enumeration_limit = kDefaultEnumerationLimit;
};

enum class EvaluationMethod { ExactEnumeration, MonteCarlo };

std::string to_string(EvaluationMethod method);

struct FidelityReport {
    SchemeSpec scheme;
    EstimatorKind estimator = EstimatorKind::Optimal;
    PriorKind prior = PriorKind::EquatorialBures;
    FidelityValue fidelity;
    /// 0 for exact results; empty when a Monte Carlo run has fewer than two
    /// samples and the spread is undefined.
    std::optional<double> standard_error;
    EvaluationMethod method = EvaluationMethod::ExactEnumeration;
    /// Tomography only: probability that the raw reconstruction lies outside
    /// the Bloch disk.
    std::optional<double> discarded_fraction;
    /// Tomography only: average fidelity over the kept runs alone.
    std::optional<double> conditional_fidelity;
    int radial_order = 0;
    int angular_order = 0;
    /// |F(final orders) - F(previous orders)| when refinement ran.
    std::optional<double> refinement_change;
    long samples = 0;

    int copies() const { return scheme.total_copies; }
};

struct SweepResult {
    std::vector<FidelityReport> points;  // strictly increasing N
};

/// Prior integrals P(x) and V(x) for every count pair (kx, ky) of the local
/// scheme with n copies per axis.
class LocalBayesTable {
   public:
    LocalBayesTable(int n_per_axis, std::vector<double> mass, std::vector<Vec4> vectors);

    int n_per_axis() const { return n_; }
    double mass(int kx, int ky) const { return mass_[index(kx, ky)]; }
    VVector vector(int kx, int ky) const { return {vectors_[index(kx, ky)]}; }

   private:
    std::size_t index(int kx, int ky) const { return static_cast<std::size_t>(kx) * (n_ + 1) + ky; }

    int n_;
    std::vector<double> mass_;
    std::vector<Vec4> vectors_;
};

/// Builds the table as dense products of per-axis binomial matrices over the
/// prior nodes. Needs an equatorial prior.
LocalBayesTable build_local_table(int n_per_axis, const Prior& prior, const ExecutionOptions& exec = {});

/// Fidelity pieces of one estimator evaluated on a local table.
struct LocalScore {
    double fidelity = 0.0;
    /// Tomography only.
    double discarded = 0.0;
    std::optional<double> conditional;
};

/// F = sum_x (P(x) + R(x).V(x)) / 2 for the estimator's guess R(x). For
/// Optimal this is (1 + sum_x |V(x)|)/2. Tomography falls back to the no-data
/// guess on unphysical runs. Random is (1 + |prior mean|^2)/2 with the mean
/// taken from the table.
LocalScore score_local_table(const LocalBayesTable& table, EstimatorKind estimator);

/// Per-block Bayes data of the collective scheme under the full Bures prior,
/// in the frame where m = z: V(k, m) = (time[k], axial[k] m). The polar
/// integral is done with Gauss nodes, exact once polar_order > N/2.
struct CollectiveTable {
    int total_copies = 0;
    std::vector<SpinIndex> spins;
    std::vector<double> mass;
    std::vector<double> time;
    std::vector<double> axial;
};

CollectiveTable build_collective_table(int total_copies, int radial_order, int polar_order);

/// V(k, m) for every spin index and each given direction, by direct quadrature
/// over an arbitrary prior. Indexed [k][direction].
std::vector<std::vector<VVector>> collective_bayes_vectors(int total_copies, const Prior& prior,
                                                           std::span<const AngularNode> directions,
                                                           const ExecutionOptions& exec = {});

/// Exact average fidelity. Collective supports the optimal and random
/// estimators only; other estimators need the local count data.
FidelityReport exact_fidelity(const SchemeSpec& scheme, EstimatorKind estimator, PriorKind prior,
                              const QuadratureOptions& quad = {}, const ExecutionOptions& exec = {});

/// Literal outcome sum of the prior average of fidelity(state, guess(x)) p(x|state)
/// on a fixed grid. Collective directions use sphere_grid(direction_order).
/// Meant for small N; independent of the table machinery.
double direct_average_fidelity(const SchemeSpec& scheme, EstimatorKind estimator, const Prior& prior,
                               int direction_order = 16);

/// Local tomography where unphysical runs are discarded. fidelity falls back
/// to the no-data guess on discarded runs; conditional_fidelity renormalizes
/// over the kept runs and is empty when every run is discarded (N = 2).
FidelityReport tomography_with_discard(int total_copies, PriorKind prior = PriorKind::EquatorialBures,
                                       const QuadratureOptions& quad = {}, const ExecutionOptions& exec = {});

/// Monte Carlo estimate drawn in fixed chunks with per-chunk streams, reduced
/// in chunk order, so the report is bit-identical for any thread count.
/// Optimal guesses use a Bayes table at the base orders of quad.
FidelityReport monte_carlo_fidelity(const SchemeSpec& scheme, EstimatorKind estimator, PriorKind prior,
                                    long samples, std::uint64_t seed, const QuadratureOptions& quad = {},
                                    const ExecutionOptions& exec = {});

/// Exact fidelity for each N. Local tables are shared between estimators, so
/// one call covers several estimators; the result has one SweepResult per
/// estimator in the order given.
std::vector<SweepResult> sweep(SchemeKind scheme, std::span<const EstimatorKind> estimators, PriorKind prior,
                               std::span<const int> copies, const QuadratureOptions& quad = {},
                               const ExecutionOptions& exec = {});

SweepResult sweep(SchemeKind scheme, EstimatorKind estimator, PriorKind prior, std::span<const int> copies,
                  const QuadratureOptions& quad = {}, const ExecutionOptions& exec = {});

/// Running mean and spread of per-sample fidelities.
struct SampleStats {
    long count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    long discarded = 0;

    void add(double value);
    void merge(const SampleStats& other);
    std::optional<double> standard_error() const;
};

/// Samples per Monte Carlo chunk.
inline constexpr long kChunkSamples = 1024;

}  // namespace qest
