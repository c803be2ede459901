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

#include "qest/evaluator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qest/quadrature.hpp"
#include "qest/sampling.hpp"

namespace qest {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kNodeChunk = 2048;
constexpr Eigen::Index kColumnBlock = 64;

double xlogy(double count, double log_base) { return count == 0.0 ? 0.0 : count * log_base; }

double log_half_one_plus(double x) { return x <= -1.0 ? kNegInf : std::log1p(x) - kLn2; }

void check_combination(SchemeKind scheme, EstimatorKind estimator, PriorKind prior) {
    if (scheme == SchemeKind::LocalXY && prior != PriorKind::EquatorialBures) {
        throw std::invalid_argument("local-xy measures x and y only and needs the equatorial prior");
    }
    if (scheme == SchemeKind::Collective &&
        (estimator == EstimatorKind::MaximumLikelihood || estimator == EstimatorKind::Tomography)) {
        throw std::invalid_argument("estimator '" + to_string(estimator) +
                                    "' is defined on local count data only (use optimal or random)");
    }
}

void check_enumerable(const SchemeSpec& scheme, int limit) {
    scheme.validate();
    if (scheme.total_copies > limit) {
        throw std::invalid_argument("N = " + std::to_string(scheme.total_copies) + " exceeds the enumeration limit " +
                                    std::to_string(limit));
    }
}

// Prior nodes flattened into arrays.
struct NodeArrays {
    std::vector<Vec4> states;
    std::vector<double> weights;
};

NodeArrays flatten(const Prior& prior) {
    NodeArrays a;
    a.states.reserve(prior.node_count());
    a.weights.reserve(prior.node_count());
    prior.for_each_node([&](const EmbeddedBloch& s, double w) {
        a.states.push_back(s.components());
        a.weights.push_back(w);
    });
    return a;
}

EmbeddedBloch guess_or(const std::optional<BayesGuess>& g, const EmbeddedBloch& fallback) {
    return g ? g->guess : fallback;
}

// Directions (sin theta, 0, cos theta) at Gauss nodes in cos theta, each
// standing for its whole ring about z.
std::vector<AngularNode> ring_representatives(int order) {
    const GaussRule rule = gauss_legendre(order);
    std::vector<AngularNode> out;
    out.reserve(order);
    for (int i = 0; i < order; ++i) {
        const double c = rule.nodes[i];
        out.push_back({{std::sqrt((1.0 - c) * (1.0 + c)), 0.0, c}, 0.5 * rule.weights[i]});
    }
    return out;
}

int collective_polar_order(int total_copies, int angular_order) {
    return std::max(angular_order, total_copies / 2 + 2);
}

double collective_optimal(int total_copies, PriorKind prior, int radial, int angular, const ExecutionOptions& exec) {
    double sum = 0.0;
    if (prior == PriorKind::FullBures) {
        const CollectiveTable t = build_collective_table(total_copies, radial, collective_polar_order(total_copies, angular));
        for (std::size_t q = 0; q < t.spins.size(); ++q) sum += std::hypot(t.time[q], t.axial[q]);
    } else {
        // |V(k, m)| only depends on the polar angle of m.
        const Prior p = build_prior(prior, radial, angular);
        const auto rings = ring_representatives(std::max(angular / 2, 8));
        const auto v = collective_bayes_vectors(total_copies, p, rings, exec);
        for (const auto& row : v) {
            for (std::size_t d = 0; d < rings.size(); ++d) sum += rings[d].weight * row[d].norm();
        }
    }
    return 0.5 * (1.0 + sum);
}

struct Scores {
    std::vector<LocalScore> items;
};

Scores evaluate_at(const SchemeSpec& scheme, std::span<const EstimatorKind> estimators, PriorKind prior, int radial,
                   int angular, const ExecutionOptions& exec) {
    Scores s;
    std::optional<LocalBayesTable> table;
    for (EstimatorKind e : estimators) {
        if (e == EstimatorKind::Random) {
            s.items.push_back({random_guess_fidelity(build_prior(prior, radial, angular)).value(), 0.0, std::nullopt});
        } else if (scheme.kind == SchemeKind::LocalXY) {
            if (!table) table = build_local_table(scheme.copies_per_axis(), build_prior(prior, radial, angular), exec);
            s.items.push_back(score_local_table(*table, e));
        } else {
            s.items.push_back({collective_optimal(scheme.total_copies, prior, radial, angular, exec), 0.0, std::nullopt});
        }
    }
    return s;
}

std::vector<FidelityReport> exact_reports(const SchemeSpec& scheme, std::span<const EstimatorKind> estimators,
                                          PriorKind prior, const QuadratureOptions& quad,
                                          const ExecutionOptions& exec) {
    check_enumerable(scheme, quad.enumeration_limit);
    for (EstimatorKind e : estimators) check_combination(scheme.kind, e, prior);

    int radial = quad.radial_order;
    int angular = quad.angular_order;
    Scores current = evaluate_at(scheme, estimators, prior, radial, angular, exec);
    std::optional<double> change;
    if (quad.refine) {
        bool converged = false;
        for (int d = 0; d < quad.max_doublings && !converged; ++d) {
            radial *= 2;
            angular *= 2;
            Scores next = evaluate_at(scheme, estimators, prior, radial, angular, exec);
            double worst = 0.0;
            for (std::size_t i = 0; i < estimators.size(); ++i) {
                worst = std::max(worst, std::abs(next.items[i].fidelity - current.items[i].fidelity));
            }
            change = worst;
            converged = worst < quad.refine_tolerance;
            current = std::move(next);
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "exact fidelity for N = " << scheme.total_copies << " did not settle: |dF| = " << *change
                << " at orders " << radial << "/" << angular << ", tolerance " << quad.refine_tolerance;
            throw NumericalError(msg.str());
        }
    }

    std::vector<FidelityReport> out;
    for (std::size_t i = 0; i < estimators.size(); ++i) {
        FidelityReport r;
        r.scheme = scheme;
        r.estimator = estimators[i];
        r.prior = prior;
        r.fidelity = FidelityValue(current.items[i].fidelity);
        r.standard_error = 0.0;
        r.method = EvaluationMethod::ExactEnumeration;
        if (estimators[i] == EstimatorKind::Tomography) {
            r.discarded_fraction = std::clamp(current.items[i].discarded, 0.0, 1.0);
            r.conditional_fidelity = current.items[i].conditional;
        }
        r.radial_order = radial;
        r.angular_order = angular;
        r.refinement_change = change;
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::string to_string(EvaluationMethod method) {
    return method == EvaluationMethod::ExactEnumeration ? "exact" : "monte-carlo";
}

LocalBayesTable::LocalBayesTable(int n_per_axis, std::vector<double> mass, std::vector<Vec4> vectors)
    : n_(n_per_axis), mass_(std::move(mass)), vectors_(std::move(vectors)) {
    const std::size_t size = static_cast<std::size_t>(n_ + 1) * (n_ + 1);
    if (n_ < 1 || mass_.size() != size || vectors_.size() != size) {
        throw std::invalid_argument("LocalBayesTable: size does not match (n + 1)^2");
    }
}

LocalBayesTable build_local_table(int n_per_axis, const Prior& prior, const ExecutionOptions& exec) {
    if (n_per_axis < 1) throw std::invalid_argument("build_local_table: copies per axis must be >= 1");
    if (prior.kind() != PriorKind::EquatorialBures) {
        throw std::invalid_argument("build_local_table: needs the equatorial prior");
    }
    const int n = n_per_axis;
    const Eigen::Index m = n + 1;
    const NodeArrays nodes = flatten(prior);
    const std::size_t total = nodes.weights.size();

    std::vector<double> lb(m);
    for (int k = 0; k <= n; ++k) lb[k] = log_binomial(n, k);

    // Rows 0..m-1: mass, then time, x, y moments; columns are ky.
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(4 * m, m);
    const Eigen::Index blocks = (m + kColumnBlock - 1) / kColumnBlock;

    for (std::size_t start = 0; start < total; start += kNodeChunk) {
        const Eigen::Index rows = static_cast<Eigen::Index>(std::min(kNodeChunk, total - start));
        Eigen::MatrixXd left(rows, 4 * m);
        Eigen::MatrixXd right(rows, m);
        for (Eigen::Index j = 0; j < rows; ++j) {
            const Vec4& s = nodes.states[start + j];
            const double w = nodes.weights[start + j];
            const double ux = log_half_one_plus(s[1]), dx = log_half_one_plus(-s[1]);
            const double uy = log_half_one_plus(s[2]), dy = log_half_one_plus(-s[2]);
            for (int k = 0; k <= n; ++k) {
                const double ax = std::exp(lb[k] + xlogy(k, ux) + xlogy(n - k, dx));
                left(j, k) = w * ax;
                left(j, m + k) = w * s[0] * ax;
                left(j, 2 * m + k) = w * s[1] * ax;
                left(j, 3 * m + k) = w * s[2] * ax;
                right(j, k) = std::exp(lb[k] + xlogy(k, uy) + xlogy(n - k, dy));
            }
        }
        parallel_for(static_cast<std::size_t>(blocks), exec.threads, [&](std::size_t b) {
            const Eigen::Index c0 = static_cast<Eigen::Index>(b) * kColumnBlock;
            const Eigen::Index cols = std::min(kColumnBlock, m - c0);
            acc.middleCols(c0, cols).noalias() += left.transpose() * right.middleCols(c0, cols);
        });
    }

    std::vector<double> mass(static_cast<std::size_t>(m * m));
    std::vector<Vec4> vectors(static_cast<std::size_t>(m * m));
    for (Eigen::Index kx = 0; kx < m; ++kx) {
        for (Eigen::Index ky = 0; ky < m; ++ky) {
            const std::size_t i = static_cast<std::size_t>(kx * m + ky);
            mass[i] = acc(kx, ky);
            vectors[i] = {acc(m + kx, ky), acc(2 * m + kx, ky), acc(3 * m + kx, ky), 0.0};
        }
    }
    return LocalBayesTable(n, std::move(mass), std::move(vectors));
}

LocalScore score_local_table(const LocalBayesTable& table, EstimatorKind estimator) {
    const int n = table.n_per_axis();
    Vec4 mean{};
    for (int kx = 0; kx <= n; ++kx) {
        for (int ky = 0; ky <= n; ++ky) {
            const Vec4 v = table.vector(kx, ky).components;
            for (int i = 0; i < 4; ++i) mean[i] += v[i];
        }
    }
    LocalScore score;
    if (estimator == EstimatorKind::Random) {
        score.fidelity = 0.5 * (1.0 + dot(mean, mean));
        return score;
    }
    const EmbeddedBloch no_data = guess_or(normalize_bayes_vector({mean}), EmbeddedBloch());

    double sum = 0.0;
    double kept_mass = 0.0;
    double kept_sum = 0.0;
    for (int kx = 0; kx <= n; ++kx) {
        for (int ky = 0; ky <= n; ++ky) {
            const double p = table.mass(kx, ky);
            const VVector v = table.vector(kx, ky);
            switch (estimator) {
                case EstimatorKind::Optimal:
                    sum += v.norm();
                    break;
                case EstimatorKind::MaximumLikelihood: {
                    const MLGuess g = ml_estimate(LocalOutcome(n, kx, ky));
                    sum += 0.5 * (p + dot(g.guess.components(), v.components));
                    break;
                }
                case EstimatorKind::Tomography: {
                    const auto g = tomography_estimate(LocalOutcome(n, kx, ky)).embedded();
                    const double f = 0.5 * (p + dot((g ? *g : no_data).components(), v.components));
                    sum += f;
                    if (g) {
                        kept_mass += p;
                        kept_sum += f;
                    }
                    break;
                }
                case EstimatorKind::Random:
                    break;
            }
        }
    }
    if (estimator == EstimatorKind::Optimal) {
        score.fidelity = 0.5 * (1.0 + sum);
    } else {
        score.fidelity = sum;
    }
    if (estimator == EstimatorKind::Tomography) {
        score.discarded = std::max(0.0, 1.0 - kept_mass);
        if (kept_mass > 0.0) score.conditional = kept_sum / kept_mass;
    }
    return score;
}

CollectiveTable build_collective_table(int total_copies, int radial_order, int polar_order) {
    if (total_copies < 1) throw std::invalid_argument("build_collective_table: N must be >= 1");
    const Prior radial_prior = build_prior(PriorKind::FullBures, radial_order, 2);
    const auto radial = radial_prior.radial_nodes();
    const GaussRule polar = gauss_legendre(polar_order);

    CollectiveTable t;
    t.total_copies = total_copies;
    t.spins = spin_indices(total_copies);

    const std::size_t nr = radial.size();
    const std::size_t nt = polar.nodes.size();
    std::vector<double> aligned(nr * nt);
    std::vector<double> mixed(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        mixed[i] = 2.0 * std::log(radial[i].time) - 2.0 * kLn2;
        for (std::size_t j = 0; j < nt; ++j) aligned[i * nt + j] = log_half_one_plus(radial[i].r * polar.nodes[j]);
    }

    for (const SpinIndex& k : t.spins) {
        const double lc = log_collective_weight(k, total_copies);
        const int down = (total_copies - k.twice()) / 2;
        const int n = k.twice();
        double mass = 0.0, time = 0.0, axial = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            const double base = lc + xlogy(down, mixed[i]);
            double sm = 0.0, st = 0.0;
            for (std::size_t j = 0; j < nt; ++j) {
                const double e = 0.5 * polar.weights[j] * std::exp(base + xlogy(n, aligned[i * nt + j]));
                sm += e;
                st += e * polar.nodes[j];
            }
            mass += radial[i].weight * sm;
            time += radial[i].weight * radial[i].time * sm;
            axial += radial[i].weight * radial[i].r * st;
        }
        t.mass.push_back(mass);
        t.time.push_back(time);
        t.axial.push_back(axial);
    }
    return t;
}

std::vector<std::vector<VVector>> collective_bayes_vectors(int total_copies, const Prior& prior,
                                                           std::span<const AngularNode> directions,
                                                           const ExecutionOptions& exec) {
    const std::vector<SpinIndex> spins = spin_indices(total_copies);
    const NodeArrays nodes = flatten(prior);
    std::vector<double> mixed(nodes.weights.size());
    for (std::size_t j = 0; j < mixed.size(); ++j) {
        const double t = nodes.states[j][0];
        mixed[j] = t <= 0.0 ? kNegInf : 2.0 * std::log(t) - 2.0 * kLn2;
    }

    std::vector<std::vector<VVector>> out(spins.size(), std::vector<VVector>(directions.size()));
    parallel_for(spins.size(), exec.threads, [&](std::size_t q) {
        const SpinIndex k = spins[q];
        const double lc = log_collective_weight(k, total_copies);
        const int down = (total_copies - k.twice()) / 2;
        const int n = k.twice();
        for (std::size_t d = 0; d < directions.size(); ++d) {
            const Vec3& m = directions[d].direction;
            Vec4 v{};
            for (std::size_t j = 0; j < nodes.weights.size(); ++j) {
                const Vec4& s = nodes.states[j];
                const double rm = s[1] * m[0] + s[2] * m[1] + s[3] * m[2];
                const double p = std::exp(lc + xlogy(down, mixed[j]) + xlogy(n, log_half_one_plus(rm)));
                const double pw = nodes.weights[j] * p;
                for (int i = 0; i < 4; ++i) v[i] += pw * s[i];
            }
            out[q][d].components = v;
        }
    });
    return out;
}

FidelityReport exact_fidelity(const SchemeSpec& scheme, EstimatorKind estimator, PriorKind prior,
                              const QuadratureOptions& quad, const ExecutionOptions& exec) {
    const EstimatorKind one[] = {estimator};
    return exact_reports(scheme, one, prior, quad, exec).front();
}

double direct_average_fidelity(const SchemeSpec& scheme, EstimatorKind estimator, const Prior& prior,
                               int direction_order) {
    scheme.validate();
    check_combination(scheme.kind, estimator, prior.kind());
    const NodeArrays nodes = flatten(prior);
    std::vector<EmbeddedBloch> states;
    states.reserve(nodes.states.size());
    for (const Vec4& c : nodes.states) states.push_back(EmbeddedBloch::from_parts(c[0], BlochVector(c[1], c[2], c[3])));

    if (estimator == EstimatorKind::Random) {
        double total = 0.0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = 0; j < states.size(); ++j) {
                total += nodes.weights[i] * nodes.weights[j] * fidelity(states[i], states[j]).value();
            }
        }
        return total;
    }

    const EmbeddedBloch no_data = random_estimate(prior);
    double total = 0.0;
    auto accumulate = [&](const EmbeddedBloch& guess, double outcome_weight, auto&& likelihood) {
        double part = 0.0;
        for (std::size_t j = 0; j < states.size(); ++j) {
            part += nodes.weights[j] * fidelity(states[j], guess).value() * likelihood(states[j].spatial());
        }
        total += outcome_weight * part;
    };

    if (scheme.kind == SchemeKind::LocalXY) {
        const int n = scheme.copies_per_axis();
        for (int kx = 0; kx <= n; ++kx) {
            for (int ky = 0; ky <= n; ++ky) {
                const LocalOutcome x(n, kx, ky);
                auto like = [&](const BlochVector& b) { return local_probability(x, b); };
                EmbeddedBloch guess;
                switch (estimator) {
                    case EstimatorKind::Optimal: guess = guess_or(optimal_estimate(prior, like), no_data); break;
                    case EstimatorKind::MaximumLikelihood: guess = ml_estimate(x).guess; break;
                    case EstimatorKind::Tomography: {
                        const auto g = tomography_estimate(x).embedded();
                        guess = g ? *g : no_data;
                        break;
                    }
                    case EstimatorKind::Random: break;
                }
                accumulate(guess, 1.0, like);
            }
        }
        return total;
    }

    const std::vector<AngularNode> directions = sphere_grid(direction_order);
    for (const SpinIndex& k : spin_indices(scheme.total_copies)) {
        for (const AngularNode& d : directions) {
            const CollectiveOutcome x{k, d.direction};
            auto like = [&](const BlochVector& b) { return collective_probability(x, scheme.total_copies, b); };
            accumulate(guess_or(optimal_estimate(prior, like), no_data), d.weight, like);
        }
    }
    return total;
}

FidelityReport tomography_with_discard(int total_copies, PriorKind prior, const QuadratureOptions& quad,
                                       const ExecutionOptions& exec) {
    const SchemeSpec scheme{SchemeKind::LocalXY, total_copies};
    return exact_fidelity(scheme, EstimatorKind::Tomography, prior, quad, exec);
}

void SampleStats::add(double value) {
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
}

void SampleStats::merge(const SampleStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
        *this = other;
        return;
    }
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    mean += delta * n2 / (n1 + n2);
    m2 += other.m2 + delta * delta * n1 * n2 / (n1 + n2);
    count += other.count;
    discarded += other.discarded;
}

std::optional<double> SampleStats::standard_error() const {
    if (count < 2) return std::nullopt;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
}

FidelityReport monte_carlo_fidelity(const SchemeSpec& scheme, EstimatorKind estimator, PriorKind prior,
                                    long samples, std::uint64_t seed, const QuadratureOptions& quad,
                                    const ExecutionOptions& exec) {
    scheme.validate();
    check_combination(scheme.kind, estimator, prior);
    if (samples < 1) throw std::invalid_argument("monte carlo needs at least one sample");

    const int total_copies = scheme.total_copies;
    const int n = scheme.copies_per_axis();
    const EmbeddedBloch no_data;

    // Optimal guesses are tabulated up front where the outcome space allows.
    std::vector<EmbeddedBloch> local_guess;
    std::optional<CollectiveTable> collective;
    std::optional<Prior> grid;
    if (estimator == EstimatorKind::Optimal) {
        if (scheme.kind == SchemeKind::LocalXY) {
            const LocalBayesTable t = build_local_table(n, build_prior(prior, quad.radial_order, quad.angular_order), exec);
            for (int kx = 0; kx <= n; ++kx) {
                for (int ky = 0; ky <= n; ++ky) local_guess.push_back(guess_or(normalize_bayes_vector(t.vector(kx, ky)), no_data));
            }
        } else if (prior == PriorKind::FullBures) {
            collective = build_collective_table(total_copies, quad.radial_order,
                                                collective_polar_order(total_copies, quad.angular_order));
        } else {
            grid = build_prior(prior, quad.radial_order, quad.angular_order);
        }
    }

    auto guess_for_local = [&](const LocalOutcome& x, Rng& rng, bool& kept) -> EmbeddedBloch {
        switch (estimator) {
            case EstimatorKind::Optimal: return local_guess[static_cast<std::size_t>(x.kx()) * (n + 1) + x.ky()];
            case EstimatorKind::MaximumLikelihood: return ml_estimate(x).guess;
            case EstimatorKind::Tomography: {
                const auto g = tomography_estimate(x).embedded();
                kept = g.has_value();
                return g ? *g : no_data;
            }
            case EstimatorKind::Random: return sample_prior_state(prior, rng);
        }
        return no_data;
    };

    auto guess_for_collective = [&](const CollectiveOutcome& x, Rng& rng) -> EmbeddedBloch {
        if (estimator == EstimatorKind::Random) return sample_prior_state(prior, rng);
        if (collective) {
            const std::vector<SpinIndex>& spins = collective->spins;
            const std::size_t q = static_cast<std::size_t>(std::find(spins.begin(), spins.end(), x.k) - spins.begin());
            const double a = collective->axial[q];
            const VVector v{{collective->time[q], a * x.direction[0], a * x.direction[1], a * x.direction[2]}};
            return guess_or(normalize_bayes_vector(v), no_data);
        }
        auto like = [&](const BlochVector& b) { return collective_probability(x, total_copies, b); };
        return guess_or(optimal_estimate(*grid, like), no_data);
    };

    const std::size_t chunks = static_cast<std::size_t>((samples + kChunkSamples - 1) / kChunkSamples);
    std::vector<SampleStats> all(chunks), kept(chunks);
    parallel_for(chunks, exec.threads, [&](std::size_t c) {
        Rng rng(seed, c);
        const long count = std::min<long>(kChunkSamples, samples - static_cast<long>(c) * kChunkSamples);
        for (long s = 0; s < count; ++s) {
            const EmbeddedBloch state = sample_prior_state(prior, rng);
            bool physical = true;
            EmbeddedBloch guess;
            if (scheme.kind == SchemeKind::LocalXY) {
                guess = guess_for_local(sample_local_outcome(n, state.spatial(), rng), rng, physical);
            } else {
                guess = guess_for_collective(sample_collective_outcome(total_copies, state.spatial(), rng), rng);
            }
            const double f = fidelity(state, guess).value();
            all[c].add(f);
            if (physical) {
                kept[c].add(f);
            } else {
                ++all[c].discarded;
            }
        }
    });
    SampleStats total, total_kept;
    for (std::size_t c = 0; c < chunks; ++c) {
        total.merge(all[c]);
        total_kept.merge(kept[c]);
    }

    FidelityReport r;
    r.scheme = scheme;
    r.estimator = estimator;
    r.prior = prior;
    r.fidelity = FidelityValue(total.mean);
    r.standard_error = total.standard_error();
    r.method = EvaluationMethod::MonteCarlo;
    if (estimator == EstimatorKind::Tomography) {
        r.discarded_fraction = static_cast<double>(total.discarded) / static_cast<double>(total.count);
        if (total_kept.count > 0) r.conditional_fidelity = total_kept.mean;
    }
    if (estimator == EstimatorKind::Optimal) {
        r.radial_order = quad.radial_order;
        r.angular_order = quad.angular_order;
    }
    r.samples = samples;
    return r;
}

std::vector<SweepResult> sweep(SchemeKind scheme, std::span<const EstimatorKind> estimators, PriorKind prior,
                               std::span<const int> copies, const QuadratureOptions& quad,
                               const ExecutionOptions& exec) {
    if (estimators.empty()) throw std::invalid_argument("sweep: no estimators given");
    if (copies.empty()) throw std::invalid_argument("sweep: no N values given");
    for (std::size_t i = 1; i < copies.size(); ++i) {
        if (copies[i] <= copies[i - 1]) throw std::invalid_argument("sweep: N values must be strictly increasing");
    }
    for (int n : copies) {
        const SchemeSpec s{scheme, n};
        s.validate();
        for (EstimatorKind e : estimators) check_combination(scheme, e, prior);
    }
    std::vector<SweepResult> out(estimators.size());
    for (int n : copies) {
        const auto reports = exact_reports({scheme, n}, estimators, prior, quad, exec);
        for (std::size_t i = 0; i < reports.size(); ++i) out[i].points.push_back(reports[i]);
    }
    return out;
}

SweepResult sweep(SchemeKind scheme, EstimatorKind estimator, PriorKind prior, std::span<const int> copies,
                  const QuadratureOptions& quad, const ExecutionOptions& exec) {
    const EstimatorKind one[] = {estimator};
    return sweep(scheme, one, prior, copies, quad, exec).front();
}

}  // namespace qest
