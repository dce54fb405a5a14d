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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "game.hpp"

namespace eg {

/// Which Update-Energy to run.
///
/// Buggy is the original listing: counts computed once before the loop,
/// Delta called unconditionally, the focus vertex never leaves L after a
/// Delta-lift. Fixed recomputes counts on every outer iteration, calls Delta
/// only while the focus is invalid, and drops the focus from L once the lift
/// made it valid.
enum class Engine { Fixed, Buggy };

inline const char* to_string(Engine e) noexcept { return e == Engine::Fixed ? "fixed" : "buggy"; }

// Trace events. Every f mutation is exactly one UpdateApplied, LiftApplied
// or RecursionLevel (the doubling of f and the working weights).

struct UpdateApplied {
    VertexId v;
    Value new_f;
};
struct CountsRecomputed {};
struct DeltaComputed {
    std::vector<VertexId> b;
    Value p1, p2, p3, delta; // kTop encodes +inf
};
struct LiftApplied {
    std::vector<VertexId> b; // ascending
    Value delta;
};
struct LAdded {
    VertexId v;
};
struct LRemoved {
    VertexId v;
};
struct RecursionLevel {
    std::size_t depth; // 0 = original weights
    Weight w_level;    // max |w| of the level's target weights
};
struct EdgeRestored {
    VertexId src;
    VertexId dst;
};

using TraceEvent = std::variant<UpdateApplied, CountsRecomputed, DeltaComputed, LiftApplied, LAdded, LRemoved,
                                RecursionLevel, EdgeRestored>;

/// Scope of the p1 minimum in Delta.
enum class P1Scope {
    AllEdges,    // every edge from B n Max to outside B
    NegativeOnly // only edges with negative slack
};

class DkzSolver;

/// Working state of a run. Observers get read access to it.
class SolverState {
  public:
    const GameGraph& graph() const noexcept { return *g_; }
    /// Working weights of the current scaling level (edge-id order).
    std::span<const Weight> weights() const noexcept { return w_; }
    const Potential& f() const noexcept { return f_; }
    bool in_l(VertexId v) const { return in_l_[v] != 0; }
    bool in_b(VertexId v) const { return in_b_[v] != 0; }
    std::size_t l_size() const noexcept { return l_size_; }
    /// count[u]: outgoing edges of Max vertex u with slack >= 0 (as tracked).
    std::span<const std::int64_t> count() const noexcept { return count_; }
    VertexId focus() const noexcept { return focus_; }
    Engine engine() const noexcept { return engine_; }
    /// True between the start and the end of one Update-Energy call.
    bool in_update_energy() const noexcept { return in_update_energy_; }

    std::vector<VertexId> l_members() const {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < in_l_.size(); ++v) {
            if (in_l_[v]) out.push_back(v);
        }
        return out;
    }

  private:
    friend class DkzSolver;

    const GameGraph* g_ = nullptr;
    std::vector<Weight> w_;
    Potential f_;
    std::vector<char> in_l_;
    std::deque<VertexId> l_queue_; // L minus the focus, FIFO
    std::size_t l_size_ = 0;
    std::vector<char> in_b_;
    std::vector<VertexId> b_;
    std::vector<std::int64_t> count_;
    VertexId focus_ = 0;
    Engine engine_ = Engine::Fixed;
    bool in_update_energy_ = false;
};

/// Receives events synchronously. Events are published once the step that
/// produced them has finished mutating the state, so `state` is always the
/// post-step state; `closes_step` marks the last event of a step.
using TraceObserver =
    std::function<void(const TraceEvent& event, std::size_t index, const SolverState& state, bool closes_step)>;

struct DkzStats {
    std::size_t updates = 0;
    std::size_t lifts = 0;       // Delta-lifts
    std::size_t delta_calls = 0;
    std::size_t negative_deltas = 0;
    std::size_t recursion_depth = 0; // scaling levels that needed repair
    std::size_t steps = 0;
};

struct DkzOptions {
    Engine engine = Engine::Fixed;
    P1Scope p1_scope = P1Scope::AllEdges;
    /// 0 selects the default 64 * n * (2nW + 1).
    std::size_t step_budget = 0;
};

/// Every weight replaced by ceil(w / 2).
inline Weight half_weight(Weight w) noexcept { return w >= 0 ? (w + 1) / 2 : w / 2; }

inline GameGraph half_weights(const GameGraph& g) {
    auto w = g.weights();
    for (auto& x : w) x = half_weight(x);
    return g.with_weights(w);
}

/// Compute-Energy with either Update-Energy engine.
class DkzSolver {
  public:
    explicit DkzSolver(const GameGraph& g, DkzOptions opts = {}, TraceObserver observer = {})
        : g_(g), opts_(opts), observer_(std::move(observer)) {
        if (opts_.step_budget == 0) {
            const auto n = g.n();
            const auto w = static_cast<std::size_t>(g.max_abs_weight());
            budget_ = 64 * n * (2 * n * w + 1);
        } else {
            budget_ = opts_.step_budget;
        }
        s_.g_ = &g_;
        s_.engine_ = opts_.engine;
        const auto n = g.n();
        s_.f_ = Potential(n, 0);
        s_.w_ = g.weights();
        s_.in_l_.assign(n, 0);
        s_.in_b_.assign(n, 0);
        s_.count_.assign(n, 0);
    }

    const SolverState& state() const noexcept { return s_; }
    const DkzStats& stats() const noexcept { return stats_; }
    std::size_t step_budget() const noexcept { return budget_; }
    std::size_t events_emitted() const noexcept { return next_index_; }
    /// Components of the most recent Delta call.
    const std::optional<DeltaComputed>& last_delta() const noexcept { return last_delta_; }

    /// Least solution of the whole game by scaling.
    Potential compute_energy() {
        const auto w = g_.weights();
        s_.f_ = compute_level(w, 0);
        s_.w_ = w;
        return s_.f_;
    }

    /// Run Update-Energy once on the given weights and potential, focusing v.
    /// Used to replay a mid-recursion state directly.
    Potential update_energy_snapshot(const Potential& f, VertexId v) {
        if (f.size() != g_.n()) throw ContractViolation("snapshot potential has the wrong size");
        s_.f_ = f;
        s_.w_ = g_.weights();
        update_energy(v);
        return s_.f_;
    }

    /// Seed a mid-run state on the original weights: f, focus, L and B are
    /// set as given and counts are recomputed from f.
    void seed_state(const Potential& f, VertexId focus, std::span<const VertexId> l, std::span<const VertexId> b) {
        if (f.size() != g_.n()) throw ContractViolation("seeded potential has the wrong size");
        s_.f_ = f;
        s_.w_ = g_.weights();
        reset_sets();
        s_.focus_ = focus;
        for (const auto v : l) add_l(v);
        for (const auto v : b) add_b(v);
        for (VertexId u = 0; u < g_.n(); ++u) s_.count_[u] = g_.owner(u) == Player::Max ? count_valid(u) : 0;
        pending_.clear();
    }

    /// Update-Energy on the current state (weights and f already set).
    void update_energy(VertexId v) {
        struct Scope {
            SolverState& s;
            ~Scope() { s.in_update_energy_ = false; }
        } scope{s_};
        reset_sets();
        s_.focus_ = v;
        s_.in_update_energy_ = true;

        if (!valid(v)) {
            add_l(v);
            flush();
        }
        if (opts_.engine == Engine::Buggy) {
            recompute_counts();
            flush();
        }

        Value last_focus = kTop;
        while (l_is_focus_only()) {
            if (opts_.engine == Engine::Fixed) {
                // f(v) grows by at least one on every outer iteration
                if (last_focus != kTop && s_.f_[v] <= last_focus) {
                    throw ContractViolation("update_energy: no progress at the focus vertex");
                }
                last_focus = s_.f_[v];
                recompute_counts();
                flush();
            }
            clear_b();
            add_b(v);
            update(v);
            flush();
            while (!s_.l_queue_.empty()) {
                const auto u = s_.l_queue_.front();
                update(u);
                flush();
            }
            if (opts_.engine == Engine::Fixed && !s_.in_l(v)) break;

            const Value d = delta();
            flush();
            if (is_top(d)) throw UnboundedLift();
            if (d < 0) {
                ++stats_.negative_deltas;
                if (opts_.engine == Engine::Fixed) {
                    throw ContractViolation("negative Delta in the fixed engine");
                }
            }
            lift_b(d);
            if (opts_.engine == Engine::Fixed && valid(v)) remove_l(v);
            flush();
        }
    }

    /// Update(u): lift u by one and enqueue the predecessors it invalidated.
    void update(VertexId u) {
        if (!s_.in_l(u)) throw ContractViolation("update: vertex " + std::to_string(u) + " is not in L");
        charge_step();
        remove_l(u);
        s_.f_[u] += 1;
        ++stats_.updates;
        emit(UpdateApplied{u, s_.f_[u]});
        if (g_.owner(u) == Player::Max) s_.count_[u] = count_valid(u);
        for (const auto e : g_.in_edges(u)) {
            const auto p = g_.edge(e).src;
            // a self-loop's slack does not depend on f
            if (p == u) continue;
            const auto slack = wf(e);
            if (slack >= 0) continue;
            if (g_.owner(p) == Player::Max) {
                if (slack == -1) --s_.count_[p];
                if (s_.count_[p] == 0) {
                    add_l(p);
                    add_b(p);
                }
            } else {
                add_l(p);
                add_b(p);
            }
        }
    }

    /// Delta(B) as min(p1, p2, p3); +inf is kTop.
    Value delta() {
        ++stats_.delta_calls;
        Value p1 = kTop, p2 = kTop, p3 = kTop;
        const auto n = g_.n();
        for (VertexId u = 0; u < n; ++u) {
            const bool inside = s_.in_b(u);
            if (g_.owner(u) == Player::Max) {
                if (inside) {
                    for (EdgeId e = g_.out_begin(u); e < g_.out_end(u); ++e) {
                        if (s_.in_b(g_.edge(e).dst)) continue;
                        const auto slack = wf(e);
                        if (opts_.p1_scope == P1Scope::NegativeOnly && slack >= 0) continue;
                        p1 = std::min(p1, -slack);
                    }
                } else {
                    bool only_b_valid = true;
                    bool has_b_edge = false;
                    Value gamma = std::numeric_limits<Value>::min();
                    for (EdgeId e = g_.out_begin(u); e < g_.out_end(u); ++e) {
                        const auto slack = wf(e);
                        if (s_.in_b(g_.edge(e).dst)) {
                            has_b_edge = true;
                            gamma = std::max(gamma, slack);
                        } else if (slack >= 0) {
                            only_b_valid = false;
                            break;
                        }
                    }
                    if (only_b_valid && has_b_edge) p2 = std::min(p2, gamma);
                }
            } else if (!inside) {
                for (EdgeId e = g_.out_begin(u); e < g_.out_end(u); ++e) {
                    if (s_.in_b(g_.edge(e).dst)) p3 = std::min(p3, wf(e));
                }
            }
        }
        const Value d = std::min({p1, p2, p3});
        last_delta_ = DeltaComputed{sorted_b(), p1, p2, p3, d};
        emit(*last_delta_);
        return d;
    }

  private:
    Potential compute_level(const std::vector<Weight>& w, std::size_t depth) {
        const auto n = g_.n();
        if (std::all_of(w.begin(), w.end(), [](Weight x) { return x >= 0; })) {
            return Potential(n, 0);
        }
        std::vector<Weight> half(w.size());
        std::transform(w.begin(), w.end(), half.begin(), half_weight);
        Potential f = compute_level(half, depth + 1);

        for (VertexId v = 0; v < n; ++v) f[v] *= 2;
        for (auto& x : half) x *= 2;
        s_.f_ = std::move(f);
        s_.w_ = std::move(half);
        Weight level_w = 0;
        for (const auto x : w) level_w = std::max(level_w, x < 0 ? -x : x);
        ++stats_.recursion_depth;
        emit(RecursionLevel{depth, level_w});
        flush();

        for (VertexId v = 0; v < n; ++v) {
            bool restored = false;
            for (EdgeId e = g_.out_begin(v); e < g_.out_end(v); ++e) {
                if (s_.w_[e] > w[e]) {
                    s_.w_[e] -= 1;
                    emit(EdgeRestored{v, g_.edge(e).dst});
                    restored = true;
                }
            }
            if (restored) flush();
            update_energy(v);
        }
        return s_.f_;
    }

    Weight wf(EdgeId e) const {
        const auto& edge = g_.edge(e);
        return s_.f_[edge.src] - s_.f_[edge.dst] + s_.w_[e];
    }

    bool valid(VertexId v) const { return vertex_valid(g_, s_.w_, s_.f_, v); }

    std::int64_t count_valid(VertexId u) const {
        std::int64_t c = 0;
        for (EdgeId e = g_.out_begin(u); e < g_.out_end(u); ++e) c += wf(e) >= 0;
        return c;
    }

    void recompute_counts() {
        for (VertexId u = 0; u < g_.n(); ++u) {
            s_.count_[u] = g_.owner(u) == Player::Max ? count_valid(u) : 0;
        }
        emit(CountsRecomputed{});
    }

    bool l_is_focus_only() const { return s_.l_size_ == 1 && s_.in_l(s_.focus_); }

    void add_l(VertexId v) {
        if (s_.in_l_[v]) return;
        s_.in_l_[v] = 1;
        ++s_.l_size_;
        if (v != s_.focus_) s_.l_queue_.push_back(v);
        emit(LAdded{v});
    }

    void remove_l(VertexId v) {
        if (!s_.in_l_[v]) return;
        s_.in_l_[v] = 0;
        --s_.l_size_;
        if (v != s_.focus_) {
            auto it = std::find(s_.l_queue_.begin(), s_.l_queue_.end(), v);
            if (it != s_.l_queue_.end()) s_.l_queue_.erase(it);
        }
        emit(LRemoved{v});
    }

    void add_b(VertexId v) {
        if (s_.in_b_[v]) return;
        s_.in_b_[v] = 1;
        s_.b_.push_back(v);
    }

    void clear_b() {
        for (const auto v : s_.b_) s_.in_b_[v] = 0;
        s_.b_.clear();
    }

    void reset_sets() {
        clear_b();
        for (const auto v : s_.l_members()) s_.in_l_[v] = 0;
        s_.l_queue_.clear();
        s_.l_size_ = 0;
    }

    std::vector<VertexId> sorted_b() const {
        auto b = s_.b_;
        std::sort(b.begin(), b.end());
        return b;
    }

    void lift_b(Value d) {
        charge_step();
        for (const auto u : s_.b_) s_.f_[u] += d;
        ++stats_.lifts;
        emit(LiftApplied{sorted_b(), d});
    }

    void charge_step() {
        if (++stats_.steps > budget_) throw BudgetExhausted(budget_);
    }

    void emit(TraceEvent ev) { pending_.push_back(std::move(ev)); }

    void flush() {
        for (std::size_t i = 0; i < pending_.size(); ++i) {
            if (observer_) observer_(pending_[i], next_index_, s_, i + 1 == pending_.size());
            ++next_index_;
        }
        pending_.clear();
    }

    const GameGraph& g_;
    DkzOptions opts_;
    TraceObserver observer_;
    std::size_t budget_ = 0;
    SolverState s_;
    DkzStats stats_;
    std::vector<TraceEvent> pending_;
    std::size_t next_index_ = 0;
    std::optional<DeltaComputed> last_delta_;
};

/// Compute-Energy on g with the given engine.
inline Potential compute_energy(const GameGraph& g, Engine engine = Engine::Fixed, TraceObserver observer = {}) {
    DkzOptions opts;
    opts.engine = engine;
    DkzSolver solver(g, opts, std::move(observer));
    return solver.compute_energy();
}

} // namespace eg
