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
#include <vector>

#include "game.hpp"

namespace eg {

/// Result of turning an arbitrary game into one with a finite least solution.
struct PreprocessReport {
    GameGraph reduced;   // original minus `removed`, ids compacted
    GameGraph augmented; // reduced plus the sink
    std::vector<VertexId> removed;             // original ids, ascending
    std::vector<VertexId> reduced_to_original; // reduced id -> original id
    std::vector<std::optional<VertexId>> original_to_reduced;
    VertexId sink_id = 0; // id in `augmented`
    Weight escape_weight = 0;
    std::size_t n_reduced = 0;
    Weight w_reduced = 0; // max |w| over kept edges, dropped self-loops included
};

namespace detail {

// Kosaraju over the subgraph induced by `keep`. Returns component index per
// vertex (or -1 outside the subgraph) and the component count.
inline std::pair<std::vector<int>, int> induced_scc(const GameGraph& g, const std::vector<char>& keep) {
    const auto n = g.n();
    std::vector<char> seen(n, 0);
    std::vector<VertexId> order;
    order.reserve(n);
    for (VertexId root = 0; root < n; ++root) {
        if (!keep[root] || seen[root]) continue;
        // iterative post-order: (vertex, next edge)
        std::vector<std::pair<VertexId, EdgeId>> stack{{root, g.out_begin(root)}};
        seen[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < g.out_end(v)) {
                const auto u = g.edge(next++).dst;
                if (keep[u] && !seen[u]) {
                    seen[u] = 1;
                    stack.emplace_back(u, g.out_begin(u));
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    int count = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != -1) continue;
        std::vector<VertexId> stack{*it};
        comp[*it] = count;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const auto e : g.in_edges(v)) {
                const auto u = g.edge(e).src;
                if (keep[u] && comp[u] == -1) {
                    comp[u] = count;
                    stack.push_back(u);
                }
            }
        }
        ++count;
    }
    return {std::move(comp), count};
}

} // namespace detail

/// Vertices of the Min-induced subgraph that can reach, inside that subgraph,
/// a cycle of negative total weight.
///
/// Each strongly connected component of the Min subgraph is tested with
/// Bellman-Ford (a component has a negative cycle iff some edge still relaxes
/// after |C| rounds); the answer is the backward closure of those components.
inline std::vector<VertexId> min_forced_negative_set(const GameGraph& g) {
    const auto n = g.n();
    std::vector<char> is_min(n);
    for (VertexId v = 0; v < n; ++v) is_min[v] = g.owner(v) == Player::Min;

    const auto [comp, count] = detail::induced_scc(g, is_min);
    std::vector<std::vector<VertexId>> members(count);
    for (VertexId v = 0; v < n; ++v) {
        if (comp[v] >= 0) members[comp[v]].push_back(v);
    }

    std::vector<char> negative(n, 0);
    std::vector<Weight> dist(n, 0);
    for (int c = 0; c < count; ++c) {
        const auto& vs = members[c];
        bool relaxed = true;
        for (std::size_t round = 0; round <= vs.size() && relaxed; ++round) {
            relaxed = false;
            for (const auto v : vs) {
                for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
                    const auto& edge = g.edge(e);
                    if (comp[edge.dst] != c) continue;
                    if (dist[v] + edge.weight < dist[edge.dst]) {
                        dist[edge.dst] = dist[v] + edge.weight;
                        relaxed = true;
                    }
                }
            }
        }
        if (relaxed) {
            for (const auto v : vs) negative[v] = 1;
        }
    }

    std::deque<VertexId> work;
    for (VertexId v = 0; v < n; ++v) {
        if (negative[v]) work.push_back(v);
    }
    while (!work.empty()) {
        const auto v = work.front();
        work.pop_front();
        for (const auto e : g.in_edges(v)) {
            const auto u = g.edge(e).src;
            if (is_min[u] && !negative[u]) {
                negative[u] = 1;
                work.push_back(u);
            }
        }
    }

    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v) {
        if (negative[v]) out.push_back(v);
    }
    return out;
}

/// Min attractor of `target`: Min vertices with a successor inside, Max
/// vertices with all successors inside, closed under iteration.
inline std::vector<VertexId> min_attractor(const GameGraph& g, std::span<const VertexId> target) {
    const auto n = g.n();
    std::vector<char> in(n, 0);
    std::vector<std::size_t> escapes(n);
    for (VertexId v = 0; v < n; ++v) escapes[v] = g.out_degree(v);

    std::deque<VertexId> work;
    for (const auto v : target) {
        if (!in[v]) {
            in[v] = 1;
            work.push_back(v);
        }
    }
    while (!work.empty()) {
        const auto v = work.front();
        work.pop_front();
        for (const auto e : g.in_edges(v)) {
            const auto u = g.edge(e).src;
            if (in[u]) continue;
            if (g.owner(u) == Player::Min || --escapes[u] == 0) {
                in[u] = 1;
                work.push_back(u);
            }
        }
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v) {
        if (in[v]) out.push_back(v);
    }
    return out;
}

/// Adds a Max-owned sink with a 0 self-loop (largest id) and an escape edge of
/// weight -2nW from every Max vertex, n measured on `g` and W given.
inline GameGraph augment_with_sink(const GameGraph& g, Weight w_bound) {
    if (g.sink()) throw ContractViolation("game already has a sink");
    const auto n = static_cast<Weight>(g.n());
    Weight escape = 0;
    if (__builtin_mul_overflow(2 * n, w_bound, &escape)) {
        throw InputError("escape weight -2nW overflows");
    }
    escape = -escape;

    const auto sink = static_cast<VertexId>(g.n());
    std::vector<Player> owners = g.owners();
    owners.push_back(Player::Max);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (VertexId v = 0; v < g.n(); ++v) {
        if (g.owner(v) == Player::Max) edges.push_back({v, sink, escape});
    }
    edges.push_back({sink, sink, 0});
    return GameGraph(std::move(owners), std::move(edges), GameGraph::Check::Full, sink);
}

/// As above with W measured on `g`.
inline GameGraph augment_with_sink(const GameGraph& g) { return augment_with_sink(g, g.max_abs_weight()); }

/// Removes the Min attractor of the Min-forced negative cycles, then adds
/// the sink.
///
/// Negative self-loops of kept vertices (necessarily Max, the Min ones are
/// forced negative cycles) are dropped as well: their slack never depends on
/// f, which breaks the single-increment repair the scaling step relies on.
inline PreprocessReport preprocess(const GameGraph& g) {
    PreprocessReport rep;
    const auto forced = min_forced_negative_set(g);
    rep.removed = min_attractor(g, forced);

    std::vector<char> gone(g.n(), 0);
    for (const auto v : rep.removed) gone[v] = 1;
    rep.original_to_reduced.assign(g.n(), std::nullopt);
    std::vector<Player> owners;
    for (VertexId v = 0; v < g.n(); ++v) {
        if (gone[v]) continue;
        rep.original_to_reduced[v] = static_cast<VertexId>(rep.reduced_to_original.size());
        rep.reduced_to_original.push_back(v);
        owners.push_back(g.owner(v));
    }
    std::vector<Edge> edges;
    Weight w_kept = 0;
    for (const auto& e : g.edges()) {
        if (gone[e.src] || gone[e.dst]) continue;
        // W counts dropped loops too, or dropping one could shrink the escape cost
        w_kept = std::max(w_kept, e.weight < 0 ? -e.weight : e.weight);
        // never valid under any f; a Max vertex keeps the sink as fallback
        if (e.src == e.dst && e.weight < 0) continue;
        edges.push_back({*rep.original_to_reduced[e.src], *rep.original_to_reduced[e.dst], e.weight});
    }
    try {
        rep.reduced = GameGraph(std::move(owners), std::move(edges), GameGraph::Check::AllowDeadEnds);
    } catch (const InputError& err) {
        throw ContractViolation(std::string("attractor closure violated: ") + err.what());
    }
    rep.n_reduced = rep.reduced.n();
    rep.w_reduced = w_kept;
    rep.augmented = augment_with_sink(rep.reduced, w_kept);
    rep.sink_id = *rep.augmented.sink();
    rep.escape_weight = -2 * static_cast<Weight>(rep.n_reduced) * rep.w_reduced;
    return rep;
}

/// Winner of every original vertex given the least solution f of the
/// augmented game: Max iff kept and f(v) <= n*W of the reduced game.
inline std::vector<Player> classify_winners(const PreprocessReport& prep, const Potential& f) {
    if (f.size() != prep.augmented.n() || !f.is_finite() || !is_solution(prep.augmented, f)) {
        throw ContractViolation("classify_winners: f is not a solution of the augmented game");
    }
    const Value threshold = static_cast<Value>(prep.n_reduced) * prep.w_reduced;
    std::vector<Player> out(prep.original_to_reduced.size(), Player::Min);
    for (VertexId r = 0; r < prep.reduced.n(); ++r) {
        out[prep.reduced_to_original[r]] = f[r] <= threshold ? Player::Max : Player::Min;
    }
    return out;
}

} // namespace eg
