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

#include <array>
#include <string>
#include <vector>

#include "harness.hpp"

namespace eg {

// The three counterexample games for the original Update-Energy, plus the
// mid-recursion snapshots it trips on. Vertex ids follow the order the
// potentials are written in: G1 and G3 are <v, u, s>, G2 is <v, u, w, s>.

enum class CorpusId { G1Left, G1RightSnapshot, G2, G3Left, G3RightSnapshot };

inline const char* to_string(CorpusId id) noexcept {
    switch (id) {
    case CorpusId::G1Left: return "G1_LEFT";
    case CorpusId::G1RightSnapshot: return "G1_RIGHT_SNAPSHOT";
    case CorpusId::G2: return "G2";
    case CorpusId::G3Left: return "G3_LEFT";
    case CorpusId::G3RightSnapshot: return "G3_RIGHT_SNAPSHOT";
    }
    return "?";
}

/// A trace line the buggy run must contain, in order, and why.
struct ExpectedEvent {
    std::string pattern; // exact trace line
    std::string provenance;
};

struct ExpectedViolation {
    Lemma lemma;
    VertexId vertex;
};

struct CorpusGame {
    CorpusId id;
    GameGraph graph;
    RunMode mode;
    Potential initial_f; // snapshot mode only
    VertexId focus = 0;  // snapshot mode only
    std::vector<std::string> names;
    std::vector<ExpectedEvent> expected_events;         // buggy engine
    std::vector<ExpectedViolation> expected_violations; // buggy engine
};

inline CorpusGame corpus_game(CorpusId id) {
    using P = Player;
    switch (id) {
    case CorpusId::G1Left:
        return {id,
                GameGraph({P::Min, P::Max, P::Max}, {{0, 1, -1}, {1, 0, 1}, {1, 2, -4}, {2, 2, 0}}),
                RunMode::FullComputeEnergy,
                {},
                0,
                {"v", "u", "s"},
                {{"U 0 1", "v lifted to <1,0,0>"},
                 {"D inf 1 inf 1", "p2 = 1 from gamma(u), Delta = 1"},
                 {"L 1 0", "v lifted again to the non-tight <2,0,0>"}},
                {{Lemma::L34, 0}}};
    case CorpusId::G1RightSnapshot:
        return {id,
                GameGraph({P::Min, P::Max, P::Max}, {{0, 1, -1}, {1, 0, 2}, {1, 2, -4}, {2, 2, 0}}),
                RunMode::SnapshotUpdateEnergy,
                Potential{0, 0, 0},
                0,
                {"v", "u", "s"},
                {{"+L 0", "v invalid: w_f(v,u) = -1"},
                 {"U 0 1", "v lifted to <1,0,0>"},
                 {"D inf 1 inf 1", "p1 = inf, p2 = 1, p3 = inf, Delta = 1"},
                 {"L 1 0", "non-tight <2,0,0>"}},
                {{Lemma::L34, 0}}};
    case CorpusId::G2:
        return {id,
                GameGraph({P::Min, P::Max, P::Max, P::Max},
                          {{0, 1, -1}, {1, 0, 0}, {1, 2, -2}, {1, 3, -16}, {2, 3, -16}, {2, 2, 1}, {3, 3, 0}}),
                RunMode::FullComputeEnergy,
                {},
                0,
                {"v", "u", "w", "s"},
                {{"U 0 1", "f = <1,0,0,0>"},
                 {"+L 1", "count(u) = 0, u joins L and B"},
                 {"U 1 1", "f = <1,1,0,0>"},
                 {"D 1 inf inf 1", "p1 = 1 from w_f(u,w) = -1, Delta = 1"},
                 {"L 1 0 1", "B lifted to <2,2,0,0>, count(u) left stale"},
                 {"U 0 3", "f = <3,2,0,0>"},
                 {"+L 1", "u wrongly re-added although w_f(u,w) = 0"},
                 {"U 1 3", "u wrongly updated, f = <3,3,0,0>"}},
                {{Lemma::L33, 1}}};
    case CorpusId::G3Left:
        return {id,
                GameGraph({P::Min, P::Max, P::Max}, {{0, 1, -1}, {1, 0, -1}, {1, 2, -4}, {2, 2, 0}}),
                RunMode::FullComputeEnergy,
                {},
                0,
                {"v", "u", "s"},
                {{"D 3 inf inf 3", "p1 = 3 from w_f(u,s) = -3"}, {"L 3 0 1", "B lifted to <4,4,0>"}},
                {{Lemma::L33, 1}}};
    case CorpusId::G3RightSnapshot:
        return {id,
                GameGraph({P::Min, P::Max, P::Max}, {{0, 1, 0}, {1, 0, -1}, {1, 2, -4}, {2, 2, 0}}),
                RunMode::SnapshotUpdateEnergy,
                Potential{0, 0, 0},
                1,
                {"v", "u", "s"},
                {{"+L 1", "u invalid: w_f(u,v) = -1, w_f(u,s) = -4"},
                 {"U 1 1", "f = <0,1,0>, v becomes invalid"},
                 {"U 0 1", "f = <1,1,0>, u invalid again"},
                 {"D 3 inf inf 3", "p1 = 3 from w_f(u,s) = -3, Delta = 3"},
                 {"L 3 0 1", "B lifted to <4,4,0>, u valid but kept in L"},
                 {"U 1 5", "u wrongly updated again"}},
                {{Lemma::L33, 1}, {Lemma::L34, 1}}};
    }
    throw ContractViolation("unknown corpus id");
}

inline std::array<CorpusId, 5> all_corpus_ids() {
    return {CorpusId::G1Left, CorpusId::G1RightSnapshot, CorpusId::G2, CorpusId::G3Left, CorpusId::G3RightSnapshot};
}

inline SolveReport run_corpus(const CorpusGame& c, Engine engine, bool record_trace = true) {
    if (c.mode == RunMode::SnapshotUpdateEnergy) {
        return run_checked_snapshot(c.graph, c.initial_f, c.focus, engine, record_trace);
    }
    return run_checked(c.graph, engine, record_trace);
}

/// Index of each expected line in `trace`, matched as an ordered
/// subsequence; nullopt when some line is missing.
inline std::optional<std::vector<std::size_t>> match_events(const std::vector<std::string>& trace,
                                                            const std::vector<ExpectedEvent>& expected) {
    std::vector<std::size_t> at;
    std::size_t i = 0;
    for (const auto& e : expected) {
        while (i < trace.size() && trace[i] != e.pattern) ++i;
        if (i == trace.size()) return std::nullopt;
        at.push_back(i++);
    }
    return at;
}

inline bool has_violation(const std::vector<Violation>& vs, Lemma lemma, std::optional<VertexId> vertex = {}) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) {
        return v.lemma == lemma && (!vertex || v.vertex == vertex);
    });
}

/// Buggy run shows every narrated event and violation; fixed run is clean.
struct ReproResult {
    SolveReport buggy;
    SolveReport fixed;
    bool buggy_matches = false;
    bool fixed_clean = false;

    bool ok() const noexcept { return buggy_matches && fixed_clean; }
};

inline ReproResult reproduce(const CorpusGame& c) {
    ReproResult r;
    r.buggy = run_corpus(c, Engine::Buggy);
    r.fixed = run_corpus(c, Engine::Fixed);
    r.buggy_matches = match_events(r.buggy.trace, c.expected_events).has_value() &&
                      std::all_of(c.expected_violations.begin(), c.expected_violations.end(),
                                  [&](const ExpectedViolation& ev) {
                                      return has_violation(r.buggy.violations, ev.lemma, ev.vertex);
                                  });
    r.fixed_clean = r.fixed.violations.empty() && r.fixed.outcome == Outcome::Completed;
    return r;
}

} // namespace eg
