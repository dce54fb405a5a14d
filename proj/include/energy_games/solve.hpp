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

#include <json.hpp>

#include "harness.hpp"

namespace eg {

enum class SolverKind { Fixed, Buggy, Brim };

inline const char* to_string(SolverKind k) noexcept {
    switch (k) {
    case SolverKind::Fixed: return "fixed";
    case SolverKind::Buggy: return "buggy";
    case SolverKind::Brim: return "brim";
    }
    return "?";
}

struct SolveOptions {
    SolverKind solver = SolverKind::Fixed;
    bool preprocess = true; // false: solve the game as given
    bool record_trace = false;
};

/// End-to-end solve of an input game. In preprocess mode `f` is indexed by
/// original vertex id, removed vertices get top, the sink is dropped; the
/// trace refers to augmented-game ids.
inline SolveReport solve(const GameGraph& g, const SolveOptions& opt) {
    SolveReport rep;
    const GameGraph* target = &g;
    std::optional<PreprocessReport> prep;
    if (opt.preprocess) {
        prep = preprocess(g);
        target = &prep->augmented;
    }

    if (opt.solver == SolverKind::Brim) {
        BrimStats st;
        std::vector<std::string> trace;
        auto on_lift = [&](VertexId v, Value x) {
            if (opt.record_trace) trace.push_back(format_event(UpdateApplied{v, x}));
        };
        rep.f = least_solution_brim(*target, opt.preprocess ? CapMode::Augmented : CapMode::Raw, &st,
                                    WorklistOrder::Fifo, on_lift);
        rep.stats.lifts = st.lifts;
        rep.stats.engine = "brim";
        rep.trace = std::move(trace);
    } else {
        const auto engine = opt.solver == SolverKind::Fixed ? Engine::Fixed : Engine::Buggy;
        rep = run_checked(*target, engine, opt.record_trace);
    }

    if (prep) {
        rep.removed = prep->removed;
        if (rep.outcome == Outcome::Completed && is_solution(prep->augmented, rep.f)) {
            rep.winners = classify_winners(*prep, rep.f);
        }
        Potential original(g.n(), kTop);
        for (VertexId r = 0; r < prep->reduced.n(); ++r) original[prep->reduced_to_original[r]] = rep.f[r];
        rep.f = std::move(original);
    } else if (rep.outcome == Outcome::Completed) {
        rep.winners.resize(g.n());
        for (VertexId v = 0; v < g.n(); ++v) rep.winners[v] = is_top(rep.f[v]) ? Player::Min : Player::Max;
    }
    return rep;
}

inline nlohmann::ordered_json value_to_json(Value x) {
    return is_top(x) ? nlohmann::ordered_json("top") : nlohmann::ordered_json(x);
}

inline nlohmann::ordered_json violation_to_json(const Violation& v) {
    nlohmann::ordered_json j;
    j["lemma"] = to_string(v.lemma);
    j["event_index"] = v.event_index;
    j["vertex"] = v.vertex ? nlohmann::ordered_json(*v.vertex) : nlohmann::ordered_json(nullptr);
    j["detail"] = v.detail;
    return j;
}

/// Report JSON: f (id -> value, "top" for top), winners (id -> "max"/"min"),
/// removed, stats, violations, outcome.
inline nlohmann::ordered_json report_to_json(const SolveReport& rep) {
    nlohmann::ordered_json j;
    auto& f = j["f"] = nlohmann::ordered_json::object();
    for (VertexId v = 0; v < rep.f.size(); ++v) f[std::to_string(v)] = value_to_json(rep.f[v]);
    auto& w = j["winners"] = nlohmann::ordered_json::object();
    for (VertexId v = 0; v < rep.winners.size(); ++v) w[std::to_string(v)] = to_string(rep.winners[v]);
    j["removed"] = rep.removed;
    j["stats"] = {{"lifts", rep.stats.lifts},
                  {"delta_calls", rep.stats.delta_calls},
                  {"recursion_depth", rep.stats.recursion_depth},
                  {"engine", rep.stats.engine},
                  {"updates", rep.stats.updates},
                  {"negative_deltas", rep.stats.negative_deltas}};
    auto& vs = j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : rep.violations) vs.push_back(violation_to_json(v));
    j["outcome"] = to_string(rep.outcome);
    return j;
}

inline std::string serialize_report(const SolveReport& rep) { return report_to_json(rep).dump(2) + "\n"; }

} // namespace eg
