#ifndef SWNET_ROUTING_HPP
#define SWNET_ROUTING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "swnet/overlay.hpp"
#include "swnet/rng.hpp"

namespace swnet {

enum class Sidedness { OneSided, TwoSided };

struct Terminate {};
struct RandomRestart {
    int max_restarts = 10;
};
struct Backtrack {
    int history = 5;
};

using RecoveryStrategy = std::variant<Terminate, RandomRestart, Backtrack>;

enum class RouteStatus { Delivered, Failed };

struct RouteResult {
    RouteStatus status = RouteStatus::Failed;
    int hops = 0;  // every move: forward hops, backtrack moves, restart jumps
    int backtracks = 0;
    int restarts = 0;
    bool capped = false;  // failed because hops reached max_hops
    std::vector<NodeId> path;  // filled only when requested

    bool delivered() const noexcept { return status == RouteStatus::Delivered; }
};

/// 4 * (log2 n)^2, rounded up.
inline int default_max_hops(NodeId n) {
    const double lg = std::log2(static_cast<double>(n));
    return static_cast<int>(std::ceil(4.0 * lg * lg));
}

namespace detail {

// Ordering key of candidate v when routing to dst. Lower is better.
struct CandidateKey {
    std::int64_t dist;
    int overshoot;
    NodeId pos;

    auto operator<=>(const CandidateKey&) const = default;
};

inline std::optional<CandidateKey> candidate_key(NodeId cur, NodeId v, NodeId dst, Sidedness side) {
    if (v == kNoNode) return std::nullopt;
    const std::int64_t here = distance(cur, dst);
    const std::int64_t there = distance(v, dst);
    if (there >= here) return std::nullopt;  // strict progress only
    const bool overshoot = (cur > dst) ? v < dst : v > dst;
    if (overshoot && side == Sidedness::OneSided) return std::nullopt;
    return CandidateKey{there, overshoot ? 1 : 0, v};
}

// Best improving neighbor of cur not listed in `excluded`, ignoring liveness.
inline std::optional<NodeId> best_candidate(const OverlayGraph& g, NodeId cur, NodeId dst, Sidedness side,
                                            const std::vector<NodeId>& excluded) {
    std::optional<CandidateKey> best;
    auto consider = [&](NodeId v) {
        auto key = candidate_key(cur, v, dst, side);
        if (!key || (best && !(*key < *best))) return;
        if (std::find(excluded.begin(), excluded.end(), v) != excluded.end()) return;
        best = key;
    };
    consider(g.left(cur));
    consider(g.right(cur));
    for (const auto& link : g.links(cur)) consider(link.sink);
    if (!best) return std::nullopt;
    return best->pos;
}

}  // namespace detail

/// Improving neighbors of cur (immediate and long, deduplicated) in greedy
/// preference order. Liveness is not consulted.
inline std::vector<NodeId> ranked_candidates(const OverlayGraph& g, NodeId cur, NodeId dst, Sidedness side) {
    std::vector<detail::CandidateKey> keys;
    auto consider = [&](NodeId v) {
        if (auto key = detail::candidate_key(cur, v, dst, side)) keys.push_back(*key);
    };
    consider(g.left(cur));
    consider(g.right(cur));
    for (const auto& link : g.links(cur)) consider(link.sink);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<NodeId> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(k.pos);
    return out;
}

/// One greedy decision at cur. Two-sided minimizes |v - dst|; one-sided never
/// passes dst. Only strictly closer neighbors qualify; ties prefer the
/// non-overshooting side, then the lower position. The node commits to its
/// single best neighbor: if that neighbor is dead the result is Stuck
/// (nullopt) even when a worse live neighbor exists.
inline std::optional<NodeId> greedy_step(const OverlayGraph& g, NodeId cur, NodeId dst, Sidedness side) {
    if (cur == dst) throw std::logic_error("greedy_step called at the target");
    if (!g.alive(cur)) throw std::logic_error("greedy_step called at a dead node");
    static const std::vector<NodeId> none;
    auto best = detail::best_candidate(g, cur, dst, side, none);
    if (!best || !g.alive(*best)) return std::nullopt;
    return best;
}

/// Greedy routing from src to dst with the given recovery strategy.
///
/// Terminate fails at the first stuck node. RandomRestart hands the message
/// to a uniformly random live node (one hop) and routes on from there, up to
/// max_restarts times. Backtrack keeps the last `history` nodes the message
/// left; when stuck it steps back to the most recent of them (one hop),
/// excludes the choice that led to the stuck node, and continues with that
/// node's next-best neighbor. A route that reaches max_hops is Failed and
/// marked capped.
template <class URBG>
RouteResult route(const OverlayGraph& g, NodeId src, NodeId dst, Sidedness side, const RecoveryStrategy& strategy,
                  int max_hops, URBG& rng, bool record_path = false) {
    if (src < 0 || src >= g.size() || dst < 0 || dst >= g.size()) throw std::out_of_range("endpoint out of range");
    if (!g.alive(src) || !g.alive(dst)) throw std::invalid_argument("endpoint dead");
    if (const auto* bt = std::get_if<Backtrack>(&strategy); bt && bt->history < 1)
        throw std::invalid_argument("backtrack history must be at least 1");

    RouteResult r;
    if (record_path) r.path.push_back(src);

    struct Frame {
        NodeId node;
        std::vector<NodeId> excluded;
    };
    std::deque<Frame> trail;
    NodeId cur = src;
    std::vector<NodeId> excluded;

    auto move_to = [&](NodeId next) {
        cur = next;
        ++r.hops;
        if (record_path) r.path.push_back(next);
    };

    while (cur != dst) {
        if (r.hops >= max_hops) {
            r.capped = true;
            return r;
        }
        const auto next = detail::best_candidate(g, cur, dst, side, excluded);
        if (next && g.alive(*next)) {
            if (const auto* bt = std::get_if<Backtrack>(&strategy)) {
                trail.push_back({cur, std::move(excluded)});
                if (static_cast<int>(trail.size()) > bt->history) trail.pop_front();
            }
            excluded.clear();
            move_to(*next);
            continue;
        }

        // Stuck at cur.
        if (std::holds_alternative<Terminate>(strategy)) return r;
        if (const auto* rr = std::get_if<RandomRestart>(&strategy)) {
            if (r.restarts >= rr->max_restarts) return r;
            ++r.restarts;
            NodeId jump = kNoNode;
            do {
                jump = static_cast<NodeId>(uniform_int(rng, 0, g.size() - 1));
            } while (!g.alive(jump));
            excluded.clear();
            move_to(jump);
            continue;
        }
        if (trail.empty()) return r;
        Frame frame = std::move(trail.back());
        trail.pop_back();
        frame.excluded.push_back(cur);
        excluded = std::move(frame.excluded);
        ++r.backtracks;
        move_to(frame.node);
    }
    r.status = RouteStatus::Delivered;
    return r;
}

/// Digit-elimination routing for the base-b and powers-of-b link models: at
/// distance d take the longest link toward dst that does not pass it. In the
/// full base-b model that link covers floor(d / b^k) * b^k for b^k <= d <
/// b^(k+1); when links have failed it falls back to the next shorter one, down
/// to the immediate neighbor. A dead sink ends the route.
inline RouteResult route_deterministic(const OverlayGraph& g, NodeId src, NodeId dst, int max_hops,
                                       bool record_path = false) {
    if (src < 0 || src >= g.size() || dst < 0 || dst >= g.size()) throw std::out_of_range("endpoint out of range");
    if (!g.alive(src) || !g.alive(dst)) throw std::invalid_argument("endpoint dead");
    RouteResult r;
    if (record_path) r.path.push_back(src);
    NodeId cur = src;
    while (cur != dst) {
        if (r.hops >= max_hops) {
            r.capped = true;
            return r;
        }
        const std::int64_t d = distance(cur, dst);
        const int dir = dst > cur ? 1 : -1;
        NodeId best = kNoNode;
        std::int64_t best_jump = 0;
        auto consider = [&](NodeId v) {
            if (v == kNoNode) return;
            const std::int64_t jump = (std::int64_t{v} - cur) * dir;
            if (jump > best_jump && jump <= d) {
                best_jump = jump;
                best = v;
            }
        };
        consider(g.left(cur));
        consider(g.right(cur));
        for (const auto& link : g.links(cur)) consider(link.sink);
        if (best == kNoNode || !g.alive(best)) return r;
        cur = best;
        ++r.hops;
        if (record_path) r.path.push_back(cur);
    }
    r.status = RouteStatus::Delivered;
    return r;
}

}  // namespace swnet

#endif  // SWNET_ROUTING_HPP
