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

#include <optional>
#include <string>
#include <vector>

#include "brim.hpp"
#include "dkz.hpp"
#include "format.hpp"
#include "preprocess.hpp"

namespace eg {

enum class Lemma { L33, L34, DeltaGuarantee, Monotonicity, ScalingValidity };

inline const char* to_string(Lemma l) noexcept {
    switch (l) {
    case Lemma::L33: return "L33";
    case Lemma::L34: return "L34";
    case Lemma::DeltaGuarantee: return "DeltaGuarantee";
    case Lemma::Monotonicity: return "Monotonicity";
    case Lemma::ScalingValidity: return "ScalingValidity";
    }
    return "?";
}

struct Violation {
    Lemma lemma;
    std::size_t event_index;
    std::optional<VertexId> vertex;
    std::string detail;
};

// Checkers. Ground truth always comes from (graph, working weights, f); the
// solver's own bookkeeping is only ever the thing being compared.

/// L == set of invalid vertices.
inline std::optional<Violation> check_lemma_33(const SolverState& s, std::size_t index) {
    const auto& g = s.graph();
    for (VertexId v = 0; v < g.n(); ++v) {
        const bool invalid = !vertex_valid(g, s.weights(), s.f(), v);
        if (invalid != s.in_l(v)) {
            return Violation{Lemma::L33, index, v,
                             invalid ? "vertex " + std::to_string(v) + " is invalid but not in L"
                                     : "vertex " + std::to_string(v) + " is in L but valid"};
        }
    }
    return std::nullopt;
}

/// Every vertex outside L with positive f is tight.
inline std::optional<Violation> check_lemma_34(const SolverState& s, std::size_t index) {
    const auto& g = s.graph();
    for (VertexId v = 0; v < g.n(); ++v) {
        if (s.in_l(v) || s.f()[v] <= 0) continue;
        if (!vertex_tight(g, s.weights(), s.f(), v)) {
            return Violation{Lemma::L34, index, v,
                             "vertex " + std::to_string(v) + " outside L with f=" + std::to_string(s.f()[v]) +
                                 " is not tight"};
        }
    }
    return std::nullopt;
}

/// Around a Delta-lift: nothing new became invalid, and every valid vertex
/// with positive f is tight afterwards.
inline std::optional<Violation> check_delta_guarantee(const SolverState& s, std::span<const VertexId> invalid_before,
                                                      std::size_t index) {
    const auto& g = s.graph();
    for (const auto v : invalid_set(g, s.weights(), s.f())) {
        if (!std::binary_search(invalid_before.begin(), invalid_before.end(), v)) {
            return Violation{Lemma::DeltaGuarantee, index, v,
                             "vertex " + std::to_string(v) + " became invalid through the lift"};
        }
    }
    for (VertexId v = 0; v < g.n(); ++v) {
        if (s.f()[v] <= 0 || !vertex_valid(g, s.weights(), s.f(), v)) continue;
        if (!vertex_tight(g, s.weights(), s.f(), v)) {
            return Violation{Lemma::DeltaGuarantee, index, v,
                             "valid vertex " + std::to_string(v) + " is not tight after the lift"};
        }
    }
    return std::nullopt;
}

/// f never decreases.
inline std::optional<Violation> check_monotone(const Potential& before, const Potential& after, std::size_t index) {
    for (VertexId v = 0; v < after.size(); ++v) {
        if (after[v] < before[v]) {
            return Violation{Lemma::Monotonicity, index, v,
                             "f(" + std::to_string(v) + ") decreased from " + std::to_string(before[v]) + " to " +
                                 std::to_string(after[v])};
        }
    }
    return std::nullopt;
}

/// Right after doubling f and the weights, every vertex is valid.
inline std::optional<Violation> check_scaling_validity(const SolverState& s, std::size_t index) {
    const auto bad = invalid_set(s.graph(), s.weights(), s.f());
    if (bad.empty()) return std::nullopt;
    return Violation{Lemma::ScalingValidity, index, bad.front(),
                     "vertex " + std::to_string(bad.front()) + " invalid after doubling"};
}

/// Trace observer running all five checkers at step boundaries, and
/// optionally recording the trace lines.
///
/// Cost is O(n + m) per step; fine for the game sizes this is meant for.
class InvariantChecker {
  public:
    explicit InvariantChecker(bool record_trace = false) : record_(record_trace) {}

    void operator()(const TraceEvent& ev, std::size_t index, const SolverState& s, bool closes_step) {
        if (record_) trace_.push_back(format_event(ev));
        step_has_lift_ = step_has_lift_ || std::holds_alternative<LiftApplied>(ev);
        step_has_scaling_ = step_has_scaling_ || std::holds_alternative<RecursionLevel>(ev);
        if (const auto* d = std::get_if<DeltaComputed>(&ev); d && d->delta < 0) ++negative_deltas_;
        if (!closes_step) return;

        if (!prev_f_ || prev_f_->size() != s.f().size()) prev_f_ = Potential(s.f().size(), 0);
        add(check_monotone(*prev_f_, s.f(), index));
        prev_f_ = s.f();

        if (step_has_scaling_) add(check_scaling_validity(s, index));
        if (s.in_update_energy()) {
            if (step_has_lift_) add(check_delta_guarantee(s, invalid_before_, index));
            add(check_lemma_33(s, index));
            add(check_lemma_34(s, index));
        }
        invalid_before_ = invalid_set(s.graph(), s.weights(), s.f());
        step_has_lift_ = false;
        step_has_scaling_ = false;
    }

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    const std::vector<std::string>& trace() const noexcept { return trace_; }
    std::size_t negative_deltas() const noexcept { return negative_deltas_; }

  private:
    void add(std::optional<Violation> v) {
        if (v) violations_.push_back(std::move(*v));
    }

    bool record_;
    std::vector<std::string> trace_;
    std::vector<Violation> violations_;
    std::optional<Potential> prev_f_;
    std::vector<VertexId> invalid_before_;
    bool step_has_lift_ = false;
    bool step_has_scaling_ = false;
    std::size_t negative_deltas_ = 0;
};

enum class Outcome { Completed, BudgetExhausted, UnboundedLift };

inline const char* to_string(Outcome o) noexcept {
    switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::BudgetExhausted: return "budget_exhausted";
    case Outcome::UnboundedLift: return "unbounded_lift";
    }
    return "?";
}

struct SolveStats {
    std::size_t lifts = 0; // f mutations: unit updates, Delta-lifts or Brim lifts
    std::size_t updates = 0;
    std::size_t delta_calls = 0;
    std::size_t negative_deltas = 0;
    std::size_t recursion_depth = 0;
    std::string engine;
};

/// Final state of one solve.
struct SolveReport {
    Potential f;
    std::vector<Player> winners; // empty when not classified
    std::vector<VertexId> removed;
    SolveStats stats;
    std::vector<Violation> violations;
    std::vector<std::string> trace;
    Outcome outcome = Outcome::Completed;
};

enum class RunMode { FullComputeEnergy, SnapshotUpdateEnergy };

namespace detail {

template <typename Run>
SolveReport run_with_checker(const GameGraph& g, Engine engine, bool record_trace, Run&& run) {
    InvariantChecker checker(record_trace);
    DkzOptions opts;
    opts.engine = engine;
    DkzSolver solver(g, opts, [&checker](const TraceEvent& ev, std::size_t i, const SolverState& s, bool end) {
        checker(ev, i, s, end);
    });
    SolveReport rep;
    try {
        run(solver);
    } catch (const BudgetExhausted&) {
        rep.outcome = Outcome::BudgetExhausted;
    } catch (const UnboundedLift&) {
        rep.outcome = Outcome::UnboundedLift;
    }
    rep.f = solver.state().f();
    const auto& st = solver.stats();
    rep.stats = {st.updates + st.lifts, st.updates, st.delta_calls, st.negative_deltas, st.recursion_depth,
                 to_string(engine)};
    rep.violations = checker.violations();
    rep.trace = checker.trace();
    return rep;
}

} // namespace detail

/// Compute-Energy on g with every checker attached.
///
/// Solver failures that are expected of the buggy engine (budget exhaustion,
/// unbounded lift) end the run and are reported in `outcome`; the partial
/// trace and violations are kept.
inline SolveReport run_checked(const GameGraph& g, Engine engine, bool record_trace = false) {
    return detail::run_with_checker(g, engine, record_trace, [](DkzSolver& s) { s.compute_energy(); });
}

/// One Update-Energy call on a seeded mid-recursion state.
inline SolveReport run_checked_snapshot(const GameGraph& g, const Potential& f0, VertexId focus, Engine engine,
                                        bool record_trace = false) {
    return detail::run_with_checker(g, engine, record_trace,
                                    [&](DkzSolver& s) { s.update_energy_snapshot(f0, focus); });
}

struct DiffResult {
    bool equal = false;
    Potential dkz;
    Potential brim;

    explicit operator bool() const noexcept { return equal; }
};

/// Fixed-engine DKZ against the Brim oracle on the augmented game.
inline DiffResult differential_solve(const GameGraph& g) {
    const auto prep = preprocess(g);
    DiffResult r;
    r.brim = least_solution_brim(prep.augmented, CapMode::Augmented);
    r.dkz = compute_energy(prep.augmented, Engine::Fixed);
    r.equal = r.dkz == r.brim;
    return r;
}

enum class MpgSign { MaxWins, MinWins };

inline const char* to_string(MpgSign s) noexcept { return s == MpgSign::MaxWins ? "MaxWins" : "MinWins"; }

/// Zero-threshold mean-payoff decision from v by enumerating positional
/// strategies: Max wins iff some Max strategy makes every Min strategy's
/// lasso from v close a cycle of total weight >= 0.
inline MpgSign brute_force_mpg_sign(const GameGraph& g, VertexId v, std::size_t max_n = 10) {
    const auto n = g.n();
    if (n > max_n) throw SizeError("brute_force_mpg_sign: n=" + std::to_string(n) + " exceeds " + std::to_string(max_n));
    if (v >= n) throw InputError("vertex " + std::to_string(v) + " out of range");

    std::vector<VertexId> max_vs, min_vs;
    for (VertexId u = 0; u < n; ++u) (g.owner(u) == Player::Max ? max_vs : min_vs).push_back(u);

    // choice[u] = index into u's outgoing edges
    std::vector<std::size_t> choice(n, 0);
    auto advance = [&](const std::vector<VertexId>& vs) {
        for (const auto u : vs) {
            if (++choice[u] < g.out_degree(u)) return true;
            choice[u] = 0;
        }
        return false;
    };
    std::vector<int> seen_at(n);
    std::vector<Weight> prefix(n + 1);
    auto cycle_nonnegative = [&]() {
        std::fill(seen_at.begin(), seen_at.end(), -1);
        VertexId cur = v;
        Weight total = 0;
        for (int step = 0;; ++step) {
            if (seen_at[cur] >= 0) return total - prefix[seen_at[cur]] >= 0;
            seen_at[cur] = step;
            prefix[step] = total;
            const auto& e = g.edge(g.out_begin(cur) + static_cast<EdgeId>(choice[cur]));
            total += e.weight;
            cur = e.dst;
        }
    };

    do {
        bool beats_all = true;
        do {
            if (!cycle_nonnegative()) {
                beats_all = false;
                break;
            }
        } while (advance(min_vs));
        for (const auto u : min_vs) choice[u] = 0;
        if (beats_all) return MpgSign::MaxWins;
    } while (advance(max_vs));
    return MpgSign::MinWins;
}

} // namespace eg
