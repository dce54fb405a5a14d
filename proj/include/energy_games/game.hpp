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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace eg {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::int64_t;

/// Energy (potential) value: a natural number, or top.
using Value = std::int64_t;
inline constexpr Value kTop = std::numeric_limits<Value>::max();

inline constexpr bool is_top(Value x) noexcept { return x == kTop; }

/// Largest accepted absolute input weight. Keeps every scaling level and the
/// sink escape weight inside 64 bits.
inline constexpr Weight kMaxAbsWeight = Weight{1} << 40;

enum class Player : std::uint8_t { Max, Min };

inline constexpr Player opponent(Player p) noexcept {
    return p == Player::Max ? Player::Min : Player::Max;
}

inline const char* to_string(Player p) noexcept { return p == Player::Max ? "max" : "min"; }

struct Edge {
    VertexId src;
    VertexId dst;
    Weight weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable weighted game graph.
///
/// Edges are stored sorted by (src, dst), so the outgoing edges of a vertex
/// occupy a contiguous id range. Predecessor scans go through a separate
/// reverse index.
class GameGraph {
  public:
    enum class Check {
        Full,         // every vertex needs a successor
        AllowDeadEnds // Max vertices may be dead ends (transient reduced game)
    };

    GameGraph() = default;

    GameGraph(std::vector<Player> owners, std::vector<Edge> edges, Check check = Check::Full,
              std::optional<VertexId> sink = std::nullopt)
        : owners_(std::move(owners)), edges_(std::move(edges)), sink_(sink) {
        const auto n = owners_.size();
        if (n > std::numeric_limits<VertexId>::max() / 2) {
            throw InputError("too many vertices");
        }
        for (const auto& e : edges_) {
            if (e.src >= n || e.dst >= n) {
                throw InputError("edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                                 " references an undeclared vertex");
            }
        }
        std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
        });
        for (std::size_t i = 1; i < edges_.size(); ++i) {
            if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst) {
                throw InputError("duplicate edge " + std::to_string(edges_[i].src) + " -> " +
                                 std::to_string(edges_[i].dst));
            }
        }

        out_begin_.assign(n + 1, 0);
        std::vector<EdgeId> in_count(n + 1, 0);
        for (const auto& e : edges_) {
            ++out_begin_[e.src + 1];
            ++in_count[e.dst + 1];
            max_abs_weight_ = std::max(max_abs_weight_, e.weight < 0 ? -e.weight : e.weight);
        }
        std::partial_sum(out_begin_.begin(), out_begin_.end(), out_begin_.begin());
        std::partial_sum(in_count.begin(), in_count.end(), in_count.begin());
        in_begin_ = in_count;
        in_edges_.resize(edges_.size());
        for (EdgeId id = 0; id < edges_.size(); ++id) {
            in_edges_[in_count[edges_[id].dst]++] = id;
        }

        for (VertexId v = 0; v < n; ++v) {
            if (out_degree(v) > 0) continue;
            if (check == Check::Full || owners_[v] == Player::Min) {
                throw InputError("vertex " + std::to_string(v) + " has no outgoing edge");
            }
        }
        if (sink_ && *sink_ >= n) throw InputError("sink id out of range");
    }

    std::size_t n() const noexcept { return owners_.size(); }
    std::size_t m() const noexcept { return edges_.size(); }
    /// Maximum absolute edge weight; 0 for an edgeless or all-zero game.
    Weight max_abs_weight() const noexcept { return max_abs_weight_; }

    Player owner(VertexId v) const { return owners_[v]; }
    const std::vector<Player>& owners() const noexcept { return owners_; }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Weights in edge-id order.
    std::vector<Weight> weights() const {
        std::vector<Weight> w(edges_.size());
        std::transform(edges_.begin(), edges_.end(), w.begin(), [](const Edge& e) { return e.weight; });
        return w;
    }

    EdgeId out_begin(VertexId v) const { return out_begin_[v]; }
    EdgeId out_end(VertexId v) const { return out_begin_[v + 1]; }
    std::size_t out_degree(VertexId v) const { return out_end(v) - out_begin(v); }

    /// Ids of the edges entering v.
    std::span<const EdgeId> in_edges(VertexId v) const {
        return std::span<const EdgeId>(in_edges_).subspan(in_begin_[v], in_begin_[v + 1] - in_begin_[v]);
    }

    std::optional<EdgeId> find_edge(VertexId src, VertexId dst) const {
        for (EdgeId e = out_begin(src); e < out_end(src); ++e) {
            if (edges_[e].dst == dst) return e;
        }
        return std::nullopt;
    }

    /// Vertex added by sink augmentation, if this game has one.
    std::optional<VertexId> sink() const noexcept { return sink_; }

    /// Same structure, new weights (indexed by edge id).
    GameGraph with_weights(std::span<const Weight> w) const {
        GameGraph g = *this;
        g.max_abs_weight_ = 0;
        for (EdgeId e = 0; e < g.edges_.size(); ++e) {
            g.edges_[e].weight = w[e];
            g.max_abs_weight_ = std::max(g.max_abs_weight_, w[e] < 0 ? -w[e] : w[e]);
        }
        return g;
    }

    friend bool operator==(const GameGraph& a, const GameGraph& b) {
        return a.owners_ == b.owners_ && a.edges_ == b.edges_ && a.sink_ == b.sink_;
    }

  private:
    std::vector<Player> owners_;
    std::vector<Edge> edges_;
    std::vector<EdgeId> out_begin_{0};
    std::vector<EdgeId> in_begin_{0};
    std::vector<EdgeId> in_edges_;
    Weight max_abs_weight_ = 0;
    std::optional<VertexId> sink_;
};

/// Energy function f: V -> N u {top}.
class Potential {
  public:
    Potential() = default;
    explicit Potential(std::size_t n, Value fill = 0) : values_(n, fill) {}
    Potential(std::initializer_list<Value> values) : values_(values) {}
    explicit Potential(std::vector<Value> values) : values_(std::move(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    Value& operator[](VertexId v) { return values_[v]; }
    Value operator[](VertexId v) const { return values_[v]; }
    std::span<const Value> values() const noexcept { return values_; }

    bool is_finite() const {
        return std::none_of(values_.begin(), values_.end(), [](Value x) { return is_top(x); });
    }

    friend bool operator==(const Potential&, const Potential&) = default;

  private:
    std::vector<Value> values_;
};

// Predicates. Every predicate exists in two forms: against the graph's own
// weights, and against an explicit weight vector indexed by edge id (the
// working weights of a scaling level).

/// Slack of edge e: f(src) - f(dst) + w(e).
inline Weight modified_weight(const GameGraph& g, std::span<const Weight> w, const Potential& f, EdgeId e) {
    const auto& edge = g.edge(e);
    if (is_top(f[edge.src]) || is_top(f[edge.dst])) throw InfinitePotential();
    return f[edge.src] - f[edge.dst] + w[e];
}

inline Weight modified_weight(const GameGraph& g, const Potential& f, EdgeId e) {
    const auto& edge = g.edge(e);
    if (is_top(f[edge.src]) || is_top(f[edge.dst])) throw InfinitePotential();
    return f[edge.src] - f[edge.dst] + edge.weight;
}

enum class EdgeStatus { Invalid, Tight, SlackValid };

inline EdgeStatus edge_status(const GameGraph& g, std::span<const Weight> w, const Potential& f, EdgeId e) {
    const auto s = modified_weight(g, w, f, e);
    return s < 0 ? EdgeStatus::Invalid : (s == 0 ? EdgeStatus::Tight : EdgeStatus::SlackValid);
}

inline EdgeStatus edge_status(const GameGraph& g, const Potential& f, EdgeId e) {
    const auto w = g.weights();
    return edge_status(g, w, f, e);
}

/// Max: some outgoing edge has slack >= 0. Min: all outgoing edges do.
inline bool vertex_valid(const GameGraph& g, std::span<const Weight> w, const Potential& f, VertexId v) {
    if (g.owner(v) == Player::Max) {
        for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
            if (modified_weight(g, w, f, e) >= 0) return true;
        }
        return false;
    }
    for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
        if (modified_weight(g, w, f, e) < 0) return false;
    }
    return true;
}

inline bool vertex_valid(const GameGraph& g, const Potential& f, VertexId v) {
    const auto w = g.weights();
    return vertex_valid(g, w, f, v);
}

/// Valid and f(v) cannot be lowered locally: the best edge for the owner is
/// exactly tight. For Max that is max slack == 0, for Min min slack == 0.
inline bool vertex_tight(const GameGraph& g, std::span<const Weight> w, const Potential& f, VertexId v) {
    if (g.out_degree(v) == 0) return false;
    const bool is_max = g.owner(v) == Player::Max;
    Weight best = modified_weight(g, w, f, g.out_begin(v));
    for (EdgeId e = g.out_begin(v) + 1; e < g.out_end(v); ++e) {
        const auto s = modified_weight(g, w, f, e);
        best = is_max ? std::max(best, s) : std::min(best, s);
    }
    return best == 0;
}

inline bool vertex_tight(const GameGraph& g, const Potential& f, VertexId v) {
    const auto w = g.weights();
    return vertex_tight(g, w, f, v);
}

/// All invalid vertices, recomputed from scratch, ascending.
inline std::vector<VertexId> invalid_set(const GameGraph& g, std::span<const Weight> w, const Potential& f) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.n(); ++v) {
        if (!vertex_valid(g, w, f, v)) out.push_back(v);
    }
    return out;
}

inline std::vector<VertexId> invalid_set(const GameGraph& g, const Potential& f) {
    const auto w = g.weights();
    return invalid_set(g, w, f);
}

inline bool is_solution(const GameGraph& g, std::span<const Weight> w, const Potential& f) {
    for (VertexId v = 0; v < g.n(); ++v) {
        if (!vertex_valid(g, w, f, v)) return false;
    }
    return true;
}

inline bool is_solution(const GameGraph& g, const Potential& f) {
    const auto w = g.weights();
    return is_solution(g, w, f);
}

/// Every positive entry, decremented by one, breaks the solution. Holds for
/// the least solution.
inline bool is_locally_minimal(const GameGraph& g, const Potential& f) {
    Potential probe = f;
    for (VertexId v = 0; v < g.n(); ++v) {
        if (f[v] <= 0) continue;
        probe[v] = f[v] - 1;
        const bool still_solution = is_solution(g, probe);
        probe[v] = f[v];
        if (still_solution) return false;
    }
    return true;
}

} // namespace eg
