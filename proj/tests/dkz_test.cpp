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

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace eg {
namespace {

using testing::corpus_graph;
using testing::random_game;
using P = Player;

std::vector<Weight> weights_of(const GameGraph& g) { return g.weights(); }

std::vector<std::string> trace_of(const GameGraph& g, Engine engine, const Potential* snapshot = nullptr,
                                  VertexId focus = 0) {
    std::vector<std::string> lines;
    DkzOptions opts;
    opts.engine = engine;
    DkzSolver solver(g, opts, [&](const TraceEvent& ev, std::size_t, const SolverState&, bool) {
        lines.push_back(format_event(ev));
    });
    try {
        if (snapshot) {
            solver.update_energy_snapshot(*snapshot, focus);
        } else {
            solver.compute_energy();
        }
    } catch (const UnboundedLift&) {
        lines.push_back("unbounded");
    }
    return lines;
}

TEST(HalfWeights, RoundsTowardPlusInfinity) {
    EXPECT_EQ(half_weight(-3), -1);
    EXPECT_EQ(half_weight(3), 2);
    EXPECT_EQ(half_weight(-1), 0);
    EXPECT_EQ(half_weight(1), 1);
    EXPECT_EQ(half_weight(0), 0);
}

TEST(HalfWeights, Game1Left) {
    // edge order is (src, dst): (v,u) (u,v) (u,s) (s,s)
    EXPECT_EQ(weights_of(half_weights(corpus_graph(CorpusId::G1Left))), (std::vector<Weight>{0, 1, -2, 0}));
}

TEST(HalfWeights, Game3Left) {
    EXPECT_EQ(weights_of(half_weights(corpus_graph(CorpusId::G3Left))), (std::vector<Weight>{0, 0, -2, 0}));
}

TEST(HalfWeights, EvenWeightsHalveExactly) {
    const GameGraph g({P::Max, P::Min}, {{0, 1, -8}, {1, 0, 6}, {1, 1, -2}});
    EXPECT_EQ(weights_of(half_weights(g)), (std::vector<Weight>{-4, 3, -1}));
}

TEST(Update, Counterexample1LiftsV) {
    const auto g = corpus_graph(CorpusId::G1RightSnapshot);
    DkzSolver solver(g);
    const std::vector<VertexId> l{0}, b{0};
    solver.seed_state(Potential{0, 0, 0}, 0, l, b);
    solver.update(0);
    EXPECT_EQ(solver.state().f(), (Potential{1, 0, 0}));
    EXPECT_EQ(solver.state().l_size(), 0u);
}

TEST(Update, Counterexample2AddsMinPredecessor) {
    const auto g = corpus_graph(CorpusId::G2);
    DkzSolver solver(g);
    const std::vector<VertexId> l{1}, b{0, 1};
    solver.seed_state(Potential{1, 0, 0, 0}, 0, l, b);
    solver.update(1);
    EXPECT_EQ(solver.state().f(), (Potential{1, 1, 0, 0}));
    EXPECT_EQ(solver.state().l_members(), std::vector<VertexId>{0});
    EXPECT_TRUE(solver.state().in_b(0));
    EXPECT_TRUE(solver.state().in_b(1));
}

TEST(Update, MaxPredecessorJoinsWhenCountHitsZero) {
    // u (Max) has one valid edge, into x; lifting x makes it the last one to go
    const GameGraph g({P::Max, P::Max}, {{0, 1, 0}, {0, 0, -1}, {1, 1, 0}});
    DkzSolver solver(g);
    const std::vector<VertexId> l{1}, b{1};
    solver.seed_state(Potential{0, 0}, 1, l, b);
    EXPECT_EQ(solver.state().count()[0], 1);
    solver.update(1);
    EXPECT_EQ(solver.state().count()[0], 0);
    EXPECT_TRUE(solver.state().in_l(0));
    EXPECT_TRUE(solver.state().in_b(0));
}

TEST(Update, NoPredecessorsOnlyChangesFAndL) {
    const GameGraph g({P::Min, P::Max}, {{0, 1, -1}, {1, 1, 0}});
    DkzSolver solver(g);
    const std::vector<VertexId> l{0}, b{0};
    solver.seed_state(Potential{0, 0}, 0, l, b);
    solver.update(0);
    EXPECT_EQ(solver.state().f(), (Potential{1, 0}));
    EXPECT_EQ(solver.state().l_size(), 0u);
}

TEST(Update, VertexOutsideLIsAContractViolation) {
    const auto g = corpus_graph(CorpusId::G1Left);
    DkzSolver solver(g);
    EXPECT_THROW(solver.update(0), ContractViolation);
}

DeltaComputed delta_event(const GameGraph& g, const Potential& f, std::vector<VertexId> b) {
    DkzSolver solver(g);
    const std::vector<VertexId> l{0};
    solver.seed_state(f, 0, l, b);
    const auto d = solver.delta();
    EXPECT_TRUE(solver.last_delta().has_value());
    EXPECT_EQ(solver.last_delta()->delta, d);
    return *solver.last_delta();
}

TEST(Delta, Counterexample1P2) {
    const auto d = delta_event(corpus_graph(CorpusId::G1RightSnapshot), Potential{1, 0, 0}, {0});
    EXPECT_EQ(d.p1, kTop);
    EXPECT_EQ(d.p2, 1);
    EXPECT_EQ(d.p3, kTop);
    EXPECT_EQ(d.delta, 1);
}

TEST(Delta, Counterexample2P1) {
    const auto d = delta_event(corpus_graph(CorpusId::G2), Potential{1, 1, 0, 0}, {0, 1});
    EXPECT_EQ(d.p1, 1);
    EXPECT_EQ(d.p2, kTop);
    EXPECT_EQ(d.p3, kTop);
    EXPECT_EQ(d.delta, 1);
}

TEST(Delta, Counterexample3P1) {
    const auto d = delta_event(corpus_graph(CorpusId::G3RightSnapshot), Potential{1, 1, 0}, {0, 1});
    EXPECT_EQ(d.p1, 3);
    EXPECT_EQ(d.p2, kTop);
    EXPECT_EQ(d.p3, kTop);
    EXPECT_EQ(d.delta, 3);
}

TEST(Delta, P3FromMinVertexIntoB) {
    // Min x outside B with an edge into B of slack 2
    const GameGraph g({P::Min, P::Min, P::Max}, {{0, 2, -1}, {1, 0, 2}, {1, 1, 5}, {2, 2, 0}});
    const auto d = delta_event(g, Potential{0, 0, 0}, {0});
    EXPECT_EQ(d.p3, 2);
}

TEST(UpdateEnergy, Counterexample1SnapshotFixedNeverCallsDelta) {
    const auto g = corpus_graph(CorpusId::G1RightSnapshot);
    DkzSolver solver(g);
    EXPECT_EQ(solver.update_energy_snapshot(Potential{0, 0, 0}, 0), (Potential{1, 0, 0}));
    EXPECT_EQ(solver.stats().delta_calls, 0u);
    EXPECT_FALSE(solver.state().in_l(0));
}

TEST(UpdateEnergy, Counterexample1SnapshotBuggyEndsNonTight) {
    const auto g = corpus_graph(CorpusId::G1RightSnapshot);
    DkzOptions opts;
    opts.engine = Engine::Buggy;
    DkzSolver solver(g, opts);
    const auto f = solver.update_energy_snapshot(Potential{0, 0, 0}, 0);
    EXPECT_EQ(f, (Potential{2, 0, 0}));
    EXPECT_TRUE(vertex_valid(g, f, 0));
    EXPECT_FALSE(vertex_tight(g, f, 0));
}

TEST(UpdateEnergy, Counterexample3SnapshotBothEnginesReachLift) {
    const auto g = corpus_graph(CorpusId::G3RightSnapshot);
    const Potential f0{0, 0, 0};
    for (const auto engine : {Engine::Fixed, Engine::Buggy}) {
        const auto t = trace_of(g, engine, &f0, 1);
        const auto d = std::find(t.begin(), t.end(), "D 3 inf inf 3");
        ASSERT_NE(d, t.end()) << to_string(engine);
        ASSERT_NE(d + 1, t.end());
        EXPECT_EQ(*(d + 1), "L 3 0 1") << to_string(engine);
    }
    DkzSolver fixed(g);
    EXPECT_EQ(fixed.update_energy_snapshot(f0, 1), (Potential{4, 4, 0}));
    const auto t = trace_of(g, Engine::Fixed, &f0, 1);
    EXPECT_EQ(t.back(), "-L 1");
}

TEST(UpdateEnergy, AlreadyValidFocusIsNoOp) {
    const auto g = corpus_graph(CorpusId::G1Left);
    for (const auto engine : {Engine::Fixed, Engine::Buggy}) {
        DkzOptions opts;
        opts.engine = engine;
        DkzSolver solver(g, opts);
        EXPECT_EQ(solver.update_energy_snapshot(Potential{1, 0, 0}, 0), (Potential{1, 0, 0}));
        EXPECT_EQ(solver.stats().updates, 0u);
    }
}

TEST(ComputeEnergy, NonNegativeGameIsZeroWithoutRecursion) {
    const GameGraph g({P::Max, P::Min}, {{0, 1, 2}, {1, 0, 0}, {1, 1, 1}});
    DkzSolver solver(g);
    EXPECT_EQ(solver.compute_energy(), Potential(2, 0));
    EXPECT_EQ(solver.stats().recursion_depth, 0u);
}

TEST(ComputeEnergy, CorpusMatchesOracle) {
    EXPECT_EQ(compute_energy(corpus_graph(CorpusId::G1Left)), (Potential{1, 0, 0}));
    EXPECT_EQ(compute_energy(corpus_graph(CorpusId::G2)), (Potential{3, 2, 0, 0}));
    EXPECT_EQ(compute_energy(corpus_graph(CorpusId::G3Left)), (Potential{5, 4, 0}));
    for (const auto id : all_corpus_ids()) {
        const auto a = preprocess(corpus_graph(id)).augmented;
        EXPECT_EQ(compute_energy(a), least_solution_brim(a, CapMode::Augmented)) << to_string(id);
    }
}

TEST(ComputeEnergy, RecursionDepthForPowerOfTwoWeights) {
    for (const Weight w : {1, 2, 4, 8, 16}) {
        const GameGraph g({P::Min, P::Max}, {{0, 1, -w}, {1, 0, 1}, {1, 1, 0}});
        std::size_t r_events = 0;
        DkzSolver solver(g, {}, [&](const TraceEvent& ev, std::size_t, const SolverState&, bool) {
            r_events += std::holds_alternative<RecursionLevel>(ev);
        });
        solver.compute_energy();
        const auto expected = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(w)));
        EXPECT_EQ(r_events, expected) << "W=" << w;
        EXPECT_EQ(solver.stats().recursion_depth, expected) << "W=" << w;
    }
}

TEST(ComputeEnergy, RestoresOriginalWeights) {
    const auto a = preprocess(corpus_graph(CorpusId::G2)).augmented;
    DkzSolver solver(a);
    solver.compute_energy();
    const auto w = a.weights();
    EXPECT_TRUE(std::equal(w.begin(), w.end(), solver.state().weights().begin(), solver.state().weights().end()));
}

TEST(ComputeEnergy, FixedUpdateCountBound) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto a = preprocess(random_game(seed, 1, 8, 4)).augmented;
        DkzSolver solver(a);
        solver.compute_energy();
        const auto n = a.n();
        const auto w = static_cast<std::size_t>(a.max_abs_weight());
        EXPECT_LE(solver.stats().updates, n * (4 * n * w + 1)) << "seed " << seed;
    }
}

TEST(ComputeEnergy, FixedEngineNeverLogsNegativeDelta) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto a = preprocess(random_game(seed, 1, 8, 4)).augmented;
        DkzSolver solver(a);
        solver.compute_energy();
        EXPECT_EQ(solver.stats().negative_deltas, 0u);
    }
}

TEST(ComputeEnergy, UnboundedLiftWithoutPreprocessing) {
    // negative Min-only cycle: no finite lift exists
    const GameGraph g({P::Min, P::Min}, {{0, 1, -1}, {1, 0, 0}});
    EXPECT_THROW(compute_energy(g), UnboundedLift);
}

TEST(ComputeEnergy, BuggyEngineHonoursBudget) {
    DkzOptions opts;
    opts.engine = Engine::Buggy;
    opts.step_budget = 3;
    const auto g = corpus_graph(CorpusId::G2);
    DkzSolver solver(g, opts);
    EXPECT_THROW(solver.compute_energy(), BudgetExhausted);
}

TEST(ComputeEnergy, DefaultBudget) {
    const auto g = corpus_graph(CorpusId::G2); // n = 4, W = 16
    EXPECT_EQ(DkzSolver(g).step_budget(), 64u * 4 * (2 * 4 * 16 + 1));
}

TEST(ComputeEnergy, TraceIsDeterministic) {
    const auto a = preprocess(corpus_graph(CorpusId::G3Left)).augmented;
    EXPECT_EQ(trace_of(a, Engine::Fixed), trace_of(a, Engine::Fixed));
    EXPECT_EQ(trace_of(a, Engine::Buggy), trace_of(a, Engine::Buggy));
}

TEST(ComputeEnergy, P1ScopeNegativeOnlyIsSelectable) {
    // the narrower p1 variant still solves the corpus
    DkzOptions opts;
    opts.p1_scope = P1Scope::NegativeOnly;
    const auto a = preprocess(corpus_graph(CorpusId::G2)).augmented;
    DkzSolver solver(a, opts);
    EXPECT_EQ(solver.compute_energy(), least_solution_brim(a, CapMode::Augmented));
}

} // namespace
} // namespace eg
