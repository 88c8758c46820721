#include <gtest/gtest.h>

#include <cmath>

#include "swnet/overlay.hpp"

using namespace swnet;

namespace {

bool same_immediate(const OverlayGraph& a, const OverlayGraph& b) {
    if (a.size() != b.size()) return false;
    for (NodeId u = 0; u < a.size(); ++u)
        if (a.left(u) != b.left(u) || a.right(u) != b.right(u)) return false;
    return true;
}

}  // namespace

TEST(Build, TwoNodeLine) {
    auto rng = make_rng(1);
    const auto g = build(2, InversePowerLaw{3}, rng);
    EXPECT_EQ(g.right(0), 1);
    EXPECT_EQ(g.left(1), 0);
    EXPECT_EQ(g.left(0), kNoNode);
    EXPECT_EQ(g.right(1), kNoNode);
    for (const auto& l : g.links(0)) EXPECT_EQ(l.sink, 1);
    for (const auto& l : g.links(1)) EXPECT_EQ(l.sink, 0);
}

TEST(Build, RejectsTinyGraph) {
    auto rng = make_rng(1);
    EXPECT_THROW(build(1, InversePowerLaw{1}, rng), std::invalid_argument);
    EXPECT_THROW(build(8, InversePowerLaw{0}, rng), std::invalid_argument);
}

TEST(Build, InversePowerLawLinkCount) {
    auto rng = make_rng(2);
    const NodeId n = 1 << 14;
    const auto g = build(n, InversePowerLaw{14}, rng);
    EXPECT_EQ(g.total_links(), static_cast<std::size_t>(14) * n);
    for (NodeId u = 0; u < n; ++u) {
        ASSERT_EQ(g.links(u).size(), 14u);
        for (std::size_t i = 0; i < 14; ++i) {
            EXPECT_NE(g.links(u)[i].sink, u);
            EXPECT_EQ(g.links(u)[i].age, i);
        }
    }
}

TEST(Build, DeterministicBase2) {
    auto rng = make_rng(3);
    const auto g = build(8, DeterministicBaseB{2}, rng);
    std::vector<NodeId> sinks;
    for (const auto& l : g.links(0)) sinks.push_back(l.sink);
    EXPECT_EQ(sinks, (std::vector<NodeId>{1, 2, 4}));
}

TEST(Build, ReproducibleDump) {
    auto a = make_rng(42), b = make_rng(42), c = make_rng(43);
    const auto ga = build(1000, InversePowerLaw{5}, a);
    const auto gb = build(1000, InversePowerLaw{5}, b);
    const auto gc = build(1000, InversePowerLaw{5}, c);
    EXPECT_EQ(to_text(ga), to_text(gb));
    EXPECT_NE(to_text(ga), to_text(gc));
}

TEST(Serialization, RoundTrip) {
    auto rng = make_rng(8);
    auto g = apply_node_failures(build(300, InversePowerLaw{4}, rng), 0.2, rng);
    const auto text = to_text(g);
    const auto back = from_text(text);
    EXPECT_EQ(to_text(back), text);
    EXPECT_EQ(back.live_count(), g.live_count());
    EXPECT_THROW(from_text("garbage\n"), std::runtime_error);
    EXPECT_THROW(from_text(std::string(kGraphMagic) + "\nn 3\n0 1 -1 1 1 9\n"), std::runtime_error);
}

TEST(LinkFailures, Extremes) {
    auto rng = make_rng(4);
    const auto g = build(500, InversePowerLaw{6}, rng);
    const auto same = apply_link_failures(g, 1.0, rng);
    EXPECT_EQ(to_text(same), to_text(g));
    const auto none = apply_link_failures(g, 0.0, rng);
    EXPECT_EQ(none.total_links(), 0u);
    EXPECT_TRUE(same_immediate(none, g));
    EXPECT_THROW(apply_link_failures(g, 1.2, rng), std::invalid_argument);
}

TEST(LinkFailures, HalfSurvive) {
    auto rng = make_rng(5);
    const NodeId n = 1 << 12;
    const auto g = build(n, InversePowerLaw{12}, rng);
    const auto h = apply_link_failures(g, 0.5, rng);
    EXPECT_TRUE(same_immediate(g, h));
    const double total = static_cast<double>(g.total_links());
    const double frac = static_cast<double>(h.total_links()) / total;
    EXPECT_NEAR(frac, 0.5, 3 * std::sqrt(0.25 / total));
}

TEST(BinomialPresence, FullPresenceLooksLikeBuild) {
    auto rng = make_rng(6);
    const auto g = build_binomial_presence(64, 1.0, InversePowerLaw{3}, rng);
    EXPECT_EQ(g.live_count(), 64);
    for (NodeId u = 0; u < 64; ++u) {
        EXPECT_EQ(g.left(u), u == 0 ? kNoNode : u - 1);
        EXPECT_EQ(g.right(u), u == 63 ? kNoNode : u + 1);
        EXPECT_EQ(g.links(u).size(), 3u);
    }
}

TEST(BinomialPresence, HalfPresentLinksOnlyToPresent) {
    auto rng = make_rng(7);
    const NodeId n = 1 << 12;
    const auto g = build_binomial_presence(n, 0.5, InversePowerLaw{12}, rng);
    EXPECT_NEAR(g.live_count(), n / 2.0, 3 * std::sqrt(n * 0.25));
    NodeId prev = kNoNode;
    for (NodeId u = 0; u < n; ++u) {
        if (!g.alive(u)) {
            EXPECT_TRUE(g.links(u).empty());
            continue;
        }
        EXPECT_EQ(g.links(u).size(), 12u);
        for (const auto& l : g.links(u)) {
            EXPECT_TRUE(g.alive(l.sink));
            EXPECT_NE(l.sink, u);
        }
        EXPECT_EQ(g.left(u), prev);
        if (prev != kNoNode) {
            EXPECT_EQ(g.right(prev), u);
        }
        prev = u;
    }
    EXPECT_EQ(g.right(prev), kNoNode);
}

TEST(BinomialPresence, TooFewNodes) {
    auto rng = make_rng(8);
    EXPECT_THROW(build_binomial_presence(100, 0.0, InversePowerLaw{1}, rng), std::runtime_error);
}

TEST(NodeFailures, Extremes) {
    auto rng = make_rng(9);
    const auto g = build(200, InversePowerLaw{2}, rng);
    EXPECT_EQ(apply_node_failures(g, 0.0, rng).live_count(), 200);
    const auto dead = apply_node_failures(g, 1.0, rng);
    EXPECT_EQ(dead.live_count(), 0);
    EXPECT_EQ(dead.total_links(), g.total_links());
}

TEST(NodeFailures, DeadFraction) {
    auto rng = make_rng(10);
    const NodeId n = 1 << 14;
    const auto g = apply_node_failures(build(n, InversePowerLaw{2}, rng), 0.3, rng);
    const double dead = 1.0 - static_cast<double>(g.live_count()) / n;
    EXPECT_NEAR(dead, 0.3, 3 * std::sqrt(0.21 / n));
}

TEST(BuildWithFailures, Dispatch) {
    auto a = make_rng(11), b = make_rng(11);
    const auto g1 = build_with_failures(256, InversePowerLaw{2}, NodeGeneralFailure{0.25}, a);
    const auto g2 = apply_node_failures(build(256, InversePowerLaw{2}, b), 0.25, b);
    EXPECT_EQ(to_text(g1), to_text(g2));
    auto c = make_rng(12);
    EXPECT_EQ(build_with_failures(256, PowersOfB{2}, NoFailures{}, c).live_count(), 256);
}

TEST(SampleLiveSink, OnlyLiveAndLawPreserved) {
    const NodeId n = 40;
    OverlayGraph g(n);
    for (NodeId u = 0; u < n; u += 3) g.set_alive(u, false);
    g.set_alive(10, true);
    const LineSampler sampler(n);
    auto rng = make_rng(13);
    std::vector<int> count(n, 0);
    const int draws = 300'000;
    for (int i = 0; i < draws; ++i) {
        // max_rejections 0 forces the exact fallback half the time.
        const NodeId v = sample_live_sink(g, sampler, 10, rng, i % 2 == 0 ? 64 : 0);
        ASSERT_TRUE(g.alive(v));
        ++count[v];
    }
    const auto w = harmonic_weights(10, g.live_nodes());
    for (const auto& [v, p] : w)
        EXPECT_NEAR(count[v] / double(draws), p, 4 * std::sqrt(p * (1 - p) / draws)) << "v=" << v;
}
