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

#include <deque>
#include <functional>

#include "game.hpp"

namespace eg {

// Reference oracle: plain value iteration (progress-measure lifting). Slow
// and simple on purpose; the DKZ engines are checked against it.

enum class CapMode {
    Raw,      // values above n*W become top (vertex lost by Max)
    Augmented // finite by construction; exceeding 4*n*W is a contract error
};

enum class WorklistOrder { Fifo, Lifo };

struct BrimStats {
    std::size_t lifts = 0;
};

/// Smallest value at v that makes v valid given its successors, clamped at
/// 0. Results above `cap` become top.
inline Value lift_value(const GameGraph& g, const Potential& f, VertexId v, Value cap = kTop - 1) {
    const bool is_max = g.owner(v) == Player::Max;
    Value best = is_max ? kTop : 0;
    for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
        const auto& edge = g.edge(e);
        const Value fu = f[edge.dst];
        if (is_top(fu)) {
            if (!is_max) return kTop;
            continue;
        }
        const Value need = std::max<Value>(0, fu - edge.weight);
        best = is_max ? std::min(best, need) : std::max(best, need);
    }
    return best > cap ? kTop : best;
}

/// Least solution by worklist lifting from f == 0.
///
/// `on_lift(v, value)` is called after every write, for tracing.
inline Potential least_solution_brim(const GameGraph& g, CapMode mode, BrimStats* stats = nullptr,
                                     WorklistOrder order = WorklistOrder::Fifo,
                                     const std::function<void(VertexId, Value)>& on_lift = {}) {
    const auto n = g.n();
    const Value base = static_cast<Value>(n) * g.max_abs_weight();
    const Value cap = mode == CapMode::Raw ? base : 4 * base;

    Potential f(n, 0);
    std::deque<VertexId> work;
    std::vector<char> queued(n, 0);
    auto stale = [&](VertexId v) { return !is_top(f[v]) && lift_value(g, f, v, cap) > f[v]; };
    for (VertexId v = 0; v < n; ++v) {
        if (stale(v)) {
            work.push_back(v);
            queued[v] = 1;
        }
    }
    std::size_t lifts = 0;
    while (!work.empty()) {
        VertexId v;
        if (order == WorklistOrder::Fifo) {
            v = work.front();
            work.pop_front();
        } else {
            v = work.back();
            work.pop_back();
        }
        queued[v] = 0;
        const Value next = lift_value(g, f, v, cap);
        if (next <= f[v]) continue;
        if (is_top(next) && mode == CapMode::Augmented) {
            throw ContractViolation("preprocessing contract violated: value above 4nW at vertex " +
                                    std::to_string(v));
        }
        f[v] = next;
        ++lifts;
        if (on_lift) on_lift(v, next);
        for (const auto e : g.in_edges(v)) {
            const auto u = g.edge(e).src;
            if (!queued[u] && stale(u)) {
                queued[u] = 1;
                work.push_back(u);
            }
        }
    }
    if (stats) stats->lifts = lifts;
    return f;
}

} // namespace eg
