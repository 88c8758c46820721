#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "swnet/routing.hpp"

using namespace swnet;

namespace {

OverlayGraph line_with(NodeId n, std::initializer_list<std::pair<NodeId, NodeId>> links) {
    OverlayGraph g(n);
    for (const auto& [u, v] : links) g.add_link(u, v);
    return g;
}

int nonzero_digits(std::int64_t d, int b) {
    int count = 0;
    for (; d > 0; d /= b) count += d % b != 0;
    return count;
}

}  // namespace

TEST(GreedyStep, AdjacentTarget) {
    OverlayGraph g(10);
    EXPECT_EQ(greedy_step(g, 4, 3, Sidedness::TwoSided), std::optional<NodeId>{3});
    EXPECT_EQ(greedy_step(g, 4, 5, Sidedness::OneSided), std::optional<NodeId>{5});
}

TEST(GreedyStep, PicksClosest) {
    auto g = line_with(20, {{10, 9}, {10, 3}, {10, 12}});
    EXPECT_EQ(greedy_step(g, 10, 0, Sidedness::TwoSided), std::optional<NodeId>{3});
}

TEST(GreedyStep, DeadBestIsStuckEvenWithLiveAlternative) {
    auto g = line_with(20, {{10, 9}, {10, 3}, {10, 12}});
    g.set_alive(3, false);
    ASSERT_TRUE(g.alive(9));
    EXPECT_EQ(greedy_step(g, 10, 0, Sidedness::TwoSided), std::nullopt);
}

TEST(GreedyStep, OneSidedNeverOvershoots) {
    auto g = line_with(20, {{10, 4}, {10, 7}});
    EXPECT_EQ(greedy_step(g, 10, 5, Sidedness::TwoSided), std::optional<NodeId>{4});
    EXPECT_EQ(greedy_step(g, 10, 5, Sidedness::OneSided), std::optional<NodeId>{7});
}

TEST(GreedyStep, TiePrefersNonOvershootingSide) {
    auto g = line_with(20, {{10, 3}, {10, 7}});
    EXPECT_EQ(greedy_step(g, 10, 5, Sidedness::TwoSided), std::optional<NodeId>{7});
    // From below the target the non-overshooting side is the lower one.
    auto h = line_with(20, {{0, 3}, {0, 7}});
    EXPECT_EQ(greedy_step(h, 0, 5, Sidedness::TwoSided), std::optional<NodeId>{3});
}

TEST(GreedyStep, NoImprovingCandidate) {
    OverlayGraph g(10);
    g.set_left(5, kNoNode);  // lose the only link toward 0
    EXPECT_EQ(greedy_step(g, 5, 0, Sidedness::TwoSided), std::nullopt);
}

TEST(GreedyStep, ContractViolations) {
    OverlayGraph g(10);
    EXPECT_THROW(greedy_step(g, 3, 3, Sidedness::TwoSided), std::logic_error);
    g.set_alive(4, false);
    EXPECT_THROW(greedy_step(g, 4, 0, Sidedness::TwoSided), std::logic_error);
}

TEST(RankedCandidates, OrderAndDedup) {
    auto g = line_with(20, {{10, 3}, {10, 3}, {10, 12}, {10, 7}});
    EXPECT_EQ(ranked_candidates(g, 10, 5, Sidedness::TwoSided), (std::vector<NodeId>{7, 3, 9}));
    EXPECT_EQ(ranked_candidates(g, 10, 5, Sidedness::OneSided), (std::vector<NodeId>{7, 9}));
}

TEST(Route, SourceIsTarget) {
    OverlayGraph g(4);
    auto rng = make_rng(1);
    const auto r = route(g, 2, 2, Sidedness::TwoSided, Terminate{}, 10, rng, true);
    EXPECT_TRUE(r.delivered());
    EXPECT_EQ(r.hops, 0);
    EXPECT_EQ(r.path, (std::vector<NodeId>{2}));
}

TEST(Route, TwoNodes) {
    OverlayGraph g(2);
    auto rng = make_rng(1);
    const auto r = route(g, 1, 0, Sidedness::TwoSided, Terminate{}, 10, rng);
    EXPECT_TRUE(r.delivered());
    EXPECT_EQ(r.hops, 1);
}

TEST(Route, DeadEndpoint) {
    OverlayGraph g(5);
    g.set_alive(0, false);
    auto rng = make_rng(1);
    EXPECT_THROW(route(g, 3, 0, Sidedness::TwoSided, Terminate{}, 10, rng), std::invalid_argument);
    EXPECT_THROW(route(g, 0, 3, Sidedness::TwoSided, Terminate{}, 10, rng), std::invalid_argument);
}

// 9 -> 5 (best), 5's best 2 is dead; backtrack to 9, take 6, then 1, then 0.
TEST(Route, BacktrackTakesNextBest) {
    auto g = line_with(10, {{9, 5}, {9, 6}, {5, 2}, {6, 1}});
    g.set_alive(2, false);
    auto rng = make_rng(1);
    const auto t = route(g, 9, 0, Sidedness::TwoSided, Terminate{}, 100, rng, true);
    EXPECT_FALSE(t.delivered());
    EXPECT_EQ(t.hops, 1);
    EXPECT_EQ(t.path, (std::vector<NodeId>{9, 5}));

    const auto b = route(g, 9, 0, Sidedness::TwoSided, Backtrack{5}, 100, rng, true);
    EXPECT_TRUE(b.delivered());
    EXPECT_EQ(b.backtracks, 1);
    EXPECT_EQ(b.path, (std::vector<NodeId>{9, 5, 9, 6, 1, 0}));
    EXPECT_EQ(b.hops, static_cast<int>(b.path.size()) - 1);
}

// Two stuck points in a row need a history of at least 2.
TEST(Route, BacktrackHistoryLimit) {
    // 9 -> 6 -> 4 -> (2 dead). Back to 6, next best 5 -> (its best 2 dead).
    // Back to 6, which has nothing left; only a longer trail still holds 9.
    auto g = line_with(12, {{9, 6}, {6, 4}, {4, 2}, {5, 2}, {9, 8}, {8, 1}});
    g.set_alive(2, false);
    auto rng = make_rng(1);
    const auto one = route(g, 9, 0, Sidedness::TwoSided, Backtrack{1}, 100, rng, true);
    EXPECT_FALSE(one.delivered());
    const auto two = route(g, 9, 0, Sidedness::TwoSided, Backtrack{5}, 100, rng, true);
    EXPECT_TRUE(two.delivered());
    EXPECT_EQ(two.path.back(), 0);
    EXPECT_EQ(two.hops, static_cast<int>(two.path.size()) - 1);
    EXPECT_THROW(route(g, 9, 0, Sidedness::TwoSided, Backtrack{0}, 100, rng), std::invalid_argument);
}

TEST(Route, RandomRestartCountsJumps) {
    OverlayGraph g(3);
    g.set_alive(1, false);  // 2 is stuck: its only improving neighbor is dead
    int delivered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto rng = make_rng(seed);
        const auto r = route(g, 2, 0, Sidedness::TwoSided, RandomRestart{10}, 100, rng, true);
        EXPECT_LE(r.restarts, 10);
        EXPECT_EQ(r.hops, r.restarts);  // every move was a restart jump
        EXPECT_EQ(r.hops, static_cast<int>(r.path.size()) - 1);
        delivered += r.delivered();
    }
    EXPECT_GT(delivered, 190);
    auto rng = make_rng(1);
    EXPECT_FALSE(route(g, 2, 0, Sidedness::TwoSided, RandomRestart{0}, 100, rng).delivered());
}

TEST(Route, HopCapMarksCapped) {
    OverlayGraph g(100);
    auto rng = make_rng(1);
    const auto r = route(g, 99, 0, Sidedness::TwoSided, Terminate{}, 10, rng);
    EXPECT_FALSE(r.delivered());
    EXPECT_TRUE(r.capped);
    EXPECT_EQ(r.hops, 10);
}

TEST(Route, NoFailureAlwaysDeliversWithMonotoneProgress) {
    auto rng = make_rng(21);
    const NodeId n = 2048;
    for (const LinkDistribution& dist :
         std::vector<LinkDistribution>{InversePowerLaw{1}, InversePowerLaw{6}, PowersOfB{3}, DeterministicBaseB{4},
                                       BernoulliDelta::inverse_power(n)}) {
        const auto g = build(n, dist, rng);
        for (auto side : {Sidedness::OneSided, Sidedness::TwoSided})
            for (int i = 0; i < 300; ++i) {
                const auto s = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
                const auto d = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
                const auto r = route(g, s, d, side, Terminate{}, n, rng, true);
                ASSERT_TRUE(r.delivered());
                for (std::size_t k = 1; k < r.path.size(); ++k) {
                    ASSERT_LT(distance(r.path[k], d), distance(r.path[k - 1], d));
                    if (side == Sidedness::OneSided) {
                        ASSERT_GE((std::int64_t{r.path[k]} - d) * (std::int64_t{s} - d), 0);
                    }
                }
            }
    }
}

TEST(Route, DefaultMaxHops) {
    EXPECT_EQ(default_max_hops(1 << 14), 4 * 14 * 14);
    EXPECT_EQ(default_max_hops(1000), static_cast<int>(std::ceil(4 * std::log2(1000.0) * std::log2(1000.0))));
}

TEST(RouteDeterministic, Examples) {
    auto rng = make_rng(1);
    const auto g = build(64, DeterministicBaseB{2}, rng);
    EXPECT_EQ(route_deterministic(g, 10, 5, 100).hops, 2);
    EXPECT_EQ(route_deterministic(g, 0, 32, 100).hops, 1);
    EXPECT_EQ(route_deterministic(g, 40, 8, 100).hops, 1);
}

TEST(RouteDeterministic, NonzeroDigitsExhaustive) {
    auto rng = make_rng(2);
    for (const auto& [n, b] : std::vector<std::pair<NodeId, int>>{{1 << 10, 2}, {729, 3}, {1000, 10}}) {
        const auto g = build(n, DeterministicBaseB{b}, rng);
        for (NodeId s = 0; s < n; ++s)
            for (NodeId d = 0; d < n; ++d) {
                const auto r = route_deterministic(g, s, d, n);
                ASSERT_TRUE(r.delivered());
                ASSERT_EQ(r.hops, nonzero_digits(distance(s, d), b)) << s << "->" << d << " b=" << b;
            }
    }
}

// Powers of 2 only: the greedy largest-power step takes popcount(d) hops.
// Compared against 2 ceil(log2 d), with distance 1 taking its single hop.
TEST(RouteDeterministic, PowersModelBound) {
    auto rng = make_rng(3);
    const NodeId n = 1 << 10;
    const auto g = build(n, PowersOfB{2}, rng);
    for (NodeId s = 0; s < n; ++s)
        for (NodeId d = 0; d < n; ++d) {
            if (s == d) continue;
            const auto dist = distance(s, d);
            const auto r = route_deterministic(g, s, d, n);
            ASSERT_TRUE(r.delivered());
            const int bound = std::max(1, 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(dist)))));
            ASSERT_LE(r.hops, bound);
            ASSERT_EQ(r.hops, std::popcount(static_cast<std::uint64_t>(dist)));
        }
}

TEST(RouteDeterministic, PowersWithFailedLinksFallsBack) {
    auto rng = make_rng(4);
    const NodeId n = 512;
    const auto g = apply_link_failures(build(n, PowersOfB{2}, rng), 0.5, rng);
    for (int i = 0; i < 2000; ++i) {
        const auto s = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
        const auto d = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
        const auto r = route_deterministic(g, s, d, n, true);
        ASSERT_TRUE(r.delivered());
        for (std::size_t k = 1; k < r.path.size(); ++k)
            ASSERT_LT(distance(r.path[k], d), distance(r.path[k - 1], d));
    }
}

TEST(RouteDeterministic, DeadSinkFails) {
    auto rng = make_rng(5);
    auto g = build(16, DeterministicBaseB{2}, rng);
    g.set_alive(8, false);
    EXPECT_FALSE(route_deterministic(g, 0, 9, 100).delivered());
}
