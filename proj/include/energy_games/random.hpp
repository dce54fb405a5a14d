/*
 * Copyright 2026 The energy-games Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

#include "game.hpp"

namespace eg {

/// splitmix64 stream. Fixed so that generated games are reproducible across
/// platforms and standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] (modulo reduction; the bias is irrelevant at the
    /// ranges used here).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

  private:
    std::uint64_t state_;
};

struct GenParams {
    std::size_t n = 4;
    Weight max_abs_weight = 4;
    std::size_t min_out_degree = 1;
    std::size_t max_out_degree = 3;
    double min_owner_fraction = 0.5;
    std::uint64_t seed = 0;
};

/// Random game, a pure function of `p`.
///
/// Draw order: owners (a shuffle picks round(fraction * n) Min vertices),
/// then per vertex in id order its out-degree, its distinct targets (partial
/// Fisher-Yates) and one weight per target.
inline GameGraph generate_random_game(const GenParams& p) {
    if (p.n == 0) throw InputError("gen: n must be positive");
    if (p.min_out_degree < 1 || p.min_out_degree > p.max_out_degree) {
        throw InputError("gen: out-degree range must satisfy 1 <= min <= max");
    }
    if (p.max_out_degree > p.n) throw InputError("gen: max out-degree exceeds n");
    if (p.max_abs_weight < 0 || p.max_abs_weight > kMaxAbsWeight) throw InputError("gen: weight bound out of range");
    if (!(p.min_owner_fraction >= 0.0 && p.min_owner_fraction <= 1.0)) {
        throw InputError("gen: min owner fraction must lie in [0, 1]");
    }

    SplitMix64 rng(p.seed);
    const auto n = p.n;
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
    const auto min_count = static_cast<std::size_t>(std::llround(p.min_owner_fraction * static_cast<double>(n)));
    std::vector<Player> owners(n, Player::Max);
    for (std::size_t i = 0; i < min_count; ++i) owners[perm[i]] = Player::Min;

    std::vector<Edge> edges;
    std::vector<VertexId> targets(n);
    for (VertexId v = 0; v < n; ++v) {
        const auto deg = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(p.min_out_degree),
                                                              static_cast<std::int64_t>(p.max_out_degree)));
        std::iota(targets.begin(), targets.end(), 0);
        for (std::size_t i = 0; i < deg; ++i) {
            const auto j = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(i),
                                                                static_cast<std::int64_t>(n) - 1));
            std::swap(targets[i], targets[j]);
            edges.push_back({v, targets[i], rng.uniform(-p.max_abs_weight, p.max_abs_weight)});
        }
    }
    return GameGraph(std::move(owners), std::move(edges));
}

} // namespace eg
