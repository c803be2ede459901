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

#include "qest/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qest/sampling.hpp"

namespace qest {

namespace {

struct Axis {
    double c;
    double s;
};

// Posterior weights over a fixed equatorial grid.
class Posterior {
   public:
    explicit Posterior(const Prior& prior) {
        prior.for_each_node([&](const EmbeddedBloch& st, double w) {
            t_.push_back(st.time());
            x_.push_back(st.spatial().x());
            y_.push_back(st.spatial().y());
            w_.push_back(w);
        });
    }

    void start() { l_ = w_; }

    // V = sum L s, Mx = sum L x s, My = sum L y s, each as (time, x, y).
    void moments(double v[3], double mx[3], double my[3]) const {
        for (int i = 0; i < 3; ++i) v[i] = mx[i] = my[i] = 0.0;
        for (std::size_t j = 0; j < l_.size(); ++j) {
            const double a = l_[j] * t_[j], b = l_[j] * x_[j], c = l_[j] * y_[j];
            v[0] += a;
            v[1] += b;
            v[2] += c;
            mx[0] += a * x_[j];
            mx[1] += b * x_[j];
            mx[2] += c * x_[j];
            my[0] += a * y_[j];
            my[1] += b * y_[j];
            my[2] += c * y_[j];
        }
    }

    void update(const Axis& axis, bool plus) {
        const double sign = plus ? 1.0 : -1.0;
        double total = 0.0;
        for (std::size_t j = 0; j < l_.size(); ++j) {
            l_[j] *= 0.5 * (1.0 + sign * (axis.c * x_[j] + axis.s * y_[j]));
            total += l_[j];
        }
        if (total > 0.0) {
            for (double& l : l_) l /= total;
        }
    }

    VVector bayes_vector() const {
        VVector v;
        for (std::size_t j = 0; j < l_.size(); ++j) {
            v.components[0] += l_[j] * t_[j];
            v.components[1] += l_[j] * x_[j];
            v.components[2] += l_[j] * y_[j];
        }
        return v;
    }

   private:
    std::vector<double> t_, x_, y_, w_, l_;
};

Axis greedy_axis(const Posterior& post, const std::vector<Axis>& candidates) {
    double v[3], mx[3], my[3];
    post.moments(v, mx, my);
    Axis best = candidates.front();
    double best_score = -1.0;
    for (const Axis& a : candidates) {
        double plus = 0.0, minus = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = a.c * mx[i] + a.s * my[i];
            plus += (v[i] + d) * (v[i] + d);
            minus += (v[i] - d) * (v[i] - d);
        }
        const double score = std::sqrt(plus) + std::sqrt(minus);
        if (score > best_score) {
            best_score = score;
            best = a;
        }
    }
    return best;
}

}  // namespace

std::string to_string(AdaptivePolicy policy) {
    return policy == AdaptivePolicy::FixedXY ? "fixed-xy" : "greedy-fidelity";
}

AdaptivePolicy parse_adaptive_policy(const std::string& text) {
    if (text == "fixed-xy") return AdaptivePolicy::FixedXY;
    if (text == "greedy-fidelity" || text == "greedy") return AdaptivePolicy::GreedyFidelity;
    throw std::invalid_argument("unknown policy '" + text + "' (expected fixed-xy|greedy-fidelity)");
}

FidelityReport adaptive_local_fidelity(int total_copies, AdaptivePolicy policy, long samples, std::uint64_t seed,
                                       const AdaptiveOptions& options, const ExecutionOptions& exec) {
    const SchemeSpec scheme{SchemeKind::LocalXY, total_copies};
    scheme.validate();
    if (samples < 1) throw std::invalid_argument("adaptive: needs at least one sample");
    if (options.candidate_axes < 2) throw std::invalid_argument("adaptive: needs at least two candidate axes");

    const Prior prior = build_prior(PriorKind::EquatorialBures, options.radial_order, options.angular_order);
    std::vector<Axis> candidates;
    for (int j = 0; j < options.candidate_axes; ++j) {
        const double phi = std::numbers::pi * j / options.candidate_axes;
        candidates.push_back({std::cos(phi), std::sin(phi)});
    }
    const Axis x_axis{1.0, 0.0}, y_axis{0.0, 1.0};

    const std::size_t chunks = static_cast<std::size_t>((samples + kChunkSamples - 1) / kChunkSamples);
    std::vector<SampleStats> stats(chunks);
    parallel_for(chunks, exec.threads, [&](std::size_t c) {
        Rng rng(seed, c);
        Posterior post(prior);
        const long count = std::min<long>(kChunkSamples, samples - static_cast<long>(c) * kChunkSamples);
        for (long s = 0; s < count; ++s) {
            const EmbeddedBloch state = sample_prior_state(PriorKind::EquatorialBures, rng);
            post.start();
            for (int i = 0; i < total_copies; ++i) {
                Axis axis;
                if (policy == AdaptivePolicy::FixedXY) {
                    axis = i % 2 == 0 ? x_axis : y_axis;
                } else {
                    axis = greedy_axis(post, candidates);
                }
                const double p = 0.5 * (1.0 + axis.c * state.spatial().x() + axis.s * state.spatial().y());
                post.update(axis, rng.uniform() < p);
            }
            const auto g = normalize_bayes_vector(post.bayes_vector());
            stats[c].add(fidelity(state, g ? g->guess : EmbeddedBloch()).value());
        }
    });
    SampleStats total;
    for (const SampleStats& s : stats) total.merge(s);

    FidelityReport r;
    r.scheme = scheme;
    r.estimator = EstimatorKind::Optimal;
    r.prior = PriorKind::EquatorialBures;
    r.fidelity = FidelityValue(total.mean);
    r.standard_error = total.standard_error();
    r.method = EvaluationMethod::MonteCarlo;
    r.radial_order = options.radial_order;
    r.angular_order = options.angular_order;
    r.samples = samples;
    return r;
}

}  // namespace qest
