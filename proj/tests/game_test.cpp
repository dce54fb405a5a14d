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

constexpr VertexId v = 0, u = 1, s = 2;

EdgeId edge_of(const GameGraph& g, VertexId a, VertexId b) { return *g.find_edge(a, b); }

TEST(GameGraph, CachesSizesAndMaxWeight) {
    const auto g = corpus_graph(CorpusId::G1Left);
    EXPECT_EQ(g.n(), 3u);
    EXPECT_EQ(g.m(), 4u);
    EXPECT_EQ(g.max_abs_weight(), 4);
    EXPECT_EQ(g.owner(v), Player::Min);
    EXPECT_EQ(g.owner(u), Player::Max);
}

TEST(GameGraph, ZeroWeightsGiveZeroW) {
    const GameGraph g({Player::Max}, {{0, 0, 0}});
    EXPECT_EQ(g.max_abs_weight(), 0);
}

TEST(GameGraph, RejectsDeadEnd) {
    EXPECT_THROW(GameGraph({Player::Max, Player::Min}, {{0, 1, 0}}), InputError);
}

TEST(GameGraph, RejectsDuplicateEdge) {
    EXPECT_THROW(GameGraph({Player::Max}, {{0, 0, 0}, {0, 0, 1}}), InputError);
}

TEST(GameGraph, RejectsOutOfRangeEndpoint) {
    EXPECT_THROW(GameGraph({Player::Max}, {{0, 3, 0}}), InputError);
}

TEST(GameGraph, ReverseAdjacencyListsPredecessors) {
    const auto g = corpus_graph(CorpusId::G2);
    std::vector<VertexId> preds;
    for (const auto e : g.in_edges(3)) preds.push_back(g.edge(e).src);
    std::sort(preds.begin(), preds.end());
    EXPECT_EQ(preds, (std::vector<VertexId>{1, 2, 3}));
}

TEST(ModifiedWeight, Counterexample1InitialEdgeVU) {
    const auto g = corpus_graph(CorpusId::G1RightSnapshot);
    EXPECT_EQ(modified_weight(g, Potential{0, 0, 0}, edge_of(g, v, u)), -1);
}

TEST(ModifiedWeight, ZeroSelfLoopIsZero) {
    const auto g = corpus_graph(CorpusId::G1Left);
    EXPECT_EQ(modified_weight(g, Potential{7, 3, 11}, edge_of(g, s, s)), 0);
}

TEST(ModifiedWeight, Counterexample2EdgeUW) {
    const auto g = corpus_graph(CorpusId::G2);
    EXPECT_EQ(modified_weight(g, Potential{1, 1, 0, 0}, edge_of(g, 1, 2)), -1);
}

TEST(ModifiedWeight, Counterexample3EdgeUS) {
    const auto g = corpus_graph(CorpusId::G3RightSnapshot);
    EXPECT_EQ(modified_weight(g, Potential{1, 1, 0}, edge_of(g, u, s)), -3);
}

TEST(ModifiedWeight, TopEndpointThrows) {
    const auto g = corpus_graph(CorpusId::G1Left);
    EXPECT_THROW(modified_weight(g, Potential{kTop, 0, 0}, edge_of(g, v, u)), InfinitePotential);
}

TEST(EdgeStatus, Examples) {
    const auto g = corpus_graph(CorpusId::G1RightSnapshot);
    EXPECT_EQ(edge_status(g, Potential{1, 0, 0}, edge_of(g, v, u)), EdgeStatus::Tight);
    EXPECT_EQ(edge_status(g, Potential{1, 0, 0}, edge_of(g, s, s)), EdgeStatus::Tight);
    EXPECT_EQ(edge_status(g, Potential{0, 0, 0}, edge_of(g, u, s)), EdgeStatus::Invalid);
    EXPECT_EQ(edge_status(g, Potential{2, 0, 0}, edge_of(g, v, u)), EdgeStatus::SlackValid);
}

TEST(VertexValid, Examples) {
    const auto g1 = corpus_graph(CorpusId::G1RightSnapshot);
    EXPECT_FALSE(vertex_valid(g1, Potential{0, 0, 0}, v));
    EXPECT_TRUE(vertex_valid(g1, Potential{5, 9, 0}, s));
    const auto g2 = corpus_graph(CorpusId::G2);
    EXPECT_FALSE(vertex_valid(g2, Potential{1, 0, 0, 0}, 1));
}

TEST(VertexTight, Examples) {
    const auto g = corpus_graph(CorpusId::G1RightSnapshot);
    EXPECT_TRUE(vertex_tight(g, Potential{1, 0, 0}, v));
    EXPECT_TRUE(vertex_valid(g, Potential{2, 0, 0}, v));
    EXPECT_FALSE(vertex_tight(g, Potential{2, 0, 0}, v));
    EXPECT_TRUE(vertex_tight(g, Potential{2, 0, 0}, s));
}

TEST(VertexTight, MaxNeedsItsBestEdgeTight) {
    // Max 0 with edges of weight -1 and -3; tight means its largest slack is 0
    const GameGraph g({Player::Max, Player::Max, Player::Max}, {{0, 1, -1}, {0, 2, -3}, {1, 1, 0}, {2, 2, 0}});
    EXPECT_TRUE(vertex_tight(g, Potential{1, 0, 0}, 0));
    EXPECT_TRUE(vertex_valid(g, Potential{2, 0, 0}, 0));
    EXPECT_FALSE(vertex_tight(g, Potential{2, 0, 0}, 0));
    // a tight edge alone is not enough: slacks (2, 0) leave room to go lower
    EXPECT_FALSE(vertex_tight(g, Potential{3, 0, 0}, 0));
}

TEST(VertexTight, MinNeedsItsWorstEdgeTight) {
    const GameGraph g({Player::Min, Player::Max, Player::Max}, {{0, 1, -1}, {0, 2, -3}, {1, 1, 0}, {2, 2, 0}});
    EXPECT_FALSE(vertex_tight(g, Potential{1, 0, 0}, 0)); // invalid
    EXPECT_TRUE(vertex_tight(g, Potential{3, 0, 0}, 0));
    EXPECT_FALSE(vertex_tight(g, Potential{4, 0, 0}, 0));
}

TEST(InvalidSet, Examples) {
    const auto g1 = corpus_graph(CorpusId::G1RightSnapshot);
    EXPECT_EQ(invalid_set(g1, Potential{0, 0, 0}), std::vector<VertexId>{v});
    const auto g2 = corpus_graph(CorpusId::G2);
    EXPECT_EQ(invalid_set(g2, Potential{1, 1, 0, 0}), std::vector<VertexId>{0});
    const auto g3 = corpus_graph(CorpusId::G3Left);
    EXPECT_TRUE(invalid_set(g3, Potential{5, 4, 0}).empty());
}

TEST(IsSolution, Examples) {
    const GameGraph nonneg({Player::Max, Player::Min}, {{0, 1, 3}, {1, 0, 0}, {1, 1, 2}});
    EXPECT_TRUE(is_solution(nonneg, Potential(2, 0)));
    const auto g = corpus_graph(CorpusId::G1Left);
    EXPECT_TRUE(is_solution(g, Potential{1, 0, 0}));
    EXPECT_FALSE(is_solution(g, Potential{0, 0, 0}));
}

TEST(GameProperties, TelescopingOverCycles) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto g = random_game(seed, 2, 8, 4);
        SplitMix64 rng(seed);
        Potential f(g.n());
        for (VertexId x = 0; x < g.n(); ++x) f[x] = rng.uniform(0, 20);
        // walk first edges until a vertex repeats, then sum the cycle
        std::vector<int> seen(g.n(), -1);
        std::vector<EdgeId> path;
        VertexId cur = static_cast<VertexId>(rng.uniform(0, static_cast<std::int64_t>(g.n()) - 1));
        while (seen[cur] < 0) {
            seen[cur] = static_cast<int>(path.size());
            const auto e = g.out_begin(cur) + static_cast<EdgeId>(rng.uniform(0, static_cast<std::int64_t>(g.out_degree(cur)) - 1));
            path.push_back(e);
            cur = g.edge(e).dst;
        }
        Weight plain = 0, modified = 0;
        for (auto i = static_cast<std::size_t>(seen[cur]); i < path.size(); ++i) {
            plain += g.edge(path[i]).weight;
            modified += modified_weight(g, f, path[i]);
        }
        EXPECT_EQ(plain, modified) << "seed " << seed;
    }
}

TEST(GameProperties, LiftingShiftsSlacks) {
    // raising f(x) raises every outgoing slack and lowers every incoming one
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = random_game(seed, 2, 8, 4);
        const Potential f(g.n(), 3);
        for (VertexId x = 0; x < g.n(); ++x) {
            Potential lifted = f;
            lifted[x] += 2;
            for (EdgeId e = 0; e < g.m(); ++e) {
                const auto& ed = g.edge(e);
                const auto shift = modified_weight(g, lifted, e) - modified_weight(g, f, e);
                const Weight expected = (ed.src == x ? 2 : 0) - (ed.dst == x ? 2 : 0);
                EXPECT_EQ(shift, expected);
            }
        }
    }
}

TEST(GameProperties, InvalidSetMatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto g = random_game(seed, 1, 8, 4);
        SplitMix64 rng(seed + 1000);
        Potential f(g.n());
        for (VertexId x = 0; x < g.n(); ++x) f[x] = rng.uniform(0, 6);
        std::vector<VertexId> brute;
        for (VertexId x = 0; x < g.n(); ++x) {
            bool any = false, all = true;
            for (EdgeId e = g.out_begin(x); e < g.out_end(x); ++e) {
                const auto& ed = g.edge(e);
                const bool ok = f[ed.src] - f[ed.dst] + ed.weight >= 0;
                any = any || ok;
                all = all && ok;
            }
            if (!(g.owner(x) == Player::Max ? any : all)) brute.push_back(x);
        }
        EXPECT_EQ(invalid_set(g, f), brute) << "seed " << seed;
        EXPECT_EQ(is_solution(g, f), brute.empty());
    }
}

TEST(GameProperties, LeastSolutionIsLocallyMinimal) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = preprocess(random_game(seed, 1, 7, 4)).augmented;
        const auto f = least_solution_brim(g, CapMode::Augmented);
        ASSERT_TRUE(is_solution(g, f));
        EXPECT_TRUE(is_locally_minimal(g, f)) << "seed " << seed;
    }
}

TEST(ClassifyWinners, RemovedVertexIsMin) {
    const GameGraph g({Player::Min, Player::Max}, {{0, 0, -1}, {1, 0, 0}, {1, 1, 0}});
    const auto prep = preprocess(g);
    const auto f = least_solution_brim(prep.augmented, CapMode::Augmented);
    const auto w = classify_winners(prep, f);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0], Player::Min);
    EXPECT_EQ(w[1], Player::Max);
}

TEST(ClassifyWinners, SingleZeroLoopIsMax) {
    const GameGraph g({Player::Max}, {{0, 0, 0}});
    const auto prep = preprocess(g);
    const auto f = least_solution_brim(prep.augmented, CapMode::Augmented);
    EXPECT_EQ(classify_winners(prep, f), std::vector<Player>{Player::Max});
}

TEST(ClassifyWinners, AgreesWithMpgOracleOnFourVertexGames) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = random_game(seed, 4, 4, 3);
        const auto prep = preprocess(g);
        const auto w = classify_winners(prep, least_solution_brim(prep.augmented, CapMode::Augmented));
        for (VertexId x = 0; x < g.n(); ++x) {
            const auto sign = brute_force_mpg_sign(g, x);
            EXPECT_EQ(w[x] == Player::Max, sign == MpgSign::MaxWins) << "seed " << seed << " vertex " << x;
        }
    }
}

TEST(ClassifyWinners, RejectsNonSolution) {
    const auto prep = preprocess(corpus_graph(CorpusId::G1Left));
    EXPECT_THROW(classify_winners(prep, Potential(prep.augmented.n(), 0)), ContractViolation);
}

} // namespace
} // namespace eg
