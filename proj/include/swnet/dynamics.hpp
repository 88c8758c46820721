#ifndef SWNET_DYNAMICS_HPP
#define SWNET_DYNAMICS_HPP

// Overlay maintenance under churn. A joining node draws its own outgoing
// links, then asks a Poisson(ell) number of earlier nodes to redirect one of
// their links to it, so that the inverse-distance law is preserved as the
// network grows. Departures can regenerate the links that pointed at the
// departed node.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "swnet/linkgen.hpp"
#include "swnet/overlay.hpp"
#include "swnet/rng.hpp"

namespace swnet {

enum class ReplacementPolicy { InverseDistance, Oldest };

/// Graph of n positions with every node dead and unlinked; the starting point
/// for construction by joins.
inline OverlayGraph empty_overlay(NodeId n) {
    OverlayGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        g.set_alive(u, false);
        g.set_left(u, kNoNode);
        g.set_right(u, kNoNode);
    }
    return g;
}

/// target itself if live, otherwise the live node closest to it (ties go to
/// the lower position). `exclude` is treated as dead.
inline NodeId locate_or_nearest(const OverlayGraph& g, NodeId target, NodeId exclude = kNoNode) {
    if (target < 0 || target >= g.size()) throw std::out_of_range("target out of range");
    auto live = [&](NodeId v) { return v != exclude && g.alive(v); };
    if (live(target)) return target;
    for (NodeId step = 1;; ++step) {
        const NodeId lo = target - step, hi = target + step;
        const bool lo_in = lo >= 0, hi_in = hi < g.size();
        if (!lo_in && !hi_in) break;
        if (lo_in && live(lo)) return lo;
        if (hi_in && live(hi)) return hi;
    }
    throw std::runtime_error("no live nodes");
}

/// Outcome probabilities of a replacement request. Entry i < k is
/// Pr[replace link i] = (p_i / sum_{j<=k} p_j) * (p_{k+1} / sum_{j<=k+1} p_j);
/// the final entry is Pr[keep all links]. p_i = 1/d_i.
inline std::vector<double> replacement_probabilities(std::span<const double> existing, double new_distance) {
    if (existing.empty()) throw std::invalid_argument("no existing links to replace");
    double old_mass = 0.0;
    for (double d : existing) {
        if (!(d >= 1.0)) throw std::invalid_argument("link distance must be at least 1");
        old_mass += 1.0 / d;
    }
    if (!(new_distance >= 1.0)) throw std::invalid_argument("link distance must be at least 1");
    const double fresh = 1.0 / new_distance;
    const double accept = fresh / (old_mass + fresh);
    std::vector<double> out;
    out.reserve(existing.size() + 1);
    for (double d : existing) out.push_back((1.0 / d) / old_mass * accept);
    out.push_back(1.0 - accept);
    return out;
}

/// Samples the request outcome: the index of the link to redirect, or
/// nullopt to keep every link.
template <class URBG>
std::optional<std::size_t> replacement_decision(std::span<const double> existing, double new_distance, URBG& rng) {
    const auto probs = replacement_probabilities(existing, new_distance);
    const double keep = probs.back();
    if (uniform01(rng) < keep) return std::nullopt;
    double old_mass = 0.0;
    for (double d : existing) old_mass += 1.0 / d;
    double x = uniform01(rng) * old_mass;
    for (std::size_t i = 0; i < existing.size(); ++i) {
        x -= 1.0 / existing[i];
        if (x < 0.0) return i;
    }
    return existing.size() - 1;
}

namespace detail {

// Successive inverse-distance draws from v without replacement over live
// nodes other than v.
template <class URBG>
std::vector<NodeId> sample_requesters(const OverlayGraph& g, const LineSampler& sampler, NodeId v, int count,
                                      URBG& rng) {
    std::vector<NodeId> chosen;
    if (count <= 0) return chosen;
    const NodeId others = g.live_count() - (g.alive(v) ? 1 : 0);
    if (others <= 4 * count) {
        auto live = g.live_nodes();
        std::erase(live, v);
        auto weights = harmonic_weights(v, live);
        while (static_cast<int>(chosen.size()) < count && !weights.empty()) {
            double total = 0.0;
            for (const auto& w : weights) total += w.second;
            double x = uniform01(rng) * total;
            std::size_t pick = weights.size() - 1;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                x -= weights[i].second;
                if (x < 0.0) {
                    pick = i;
                    break;
                }
            }
            chosen.push_back(weights[pick].first);
            weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        return chosen;
    }
    while (static_cast<int>(chosen.size()) < count) {
        const NodeId u = sample_live_sink(g, sampler, v, rng, 1024);
        if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) chosen.push_back(u);
    }
    return chosen;
}

inline void stitch_in(OverlayGraph& g, NodeId v) {
    const NodeId lo = scan_live(g, v, -1);
    const NodeId hi = scan_live(g, v, +1);
    g.set_left(v, lo);
    g.set_right(v, hi);
    if (lo != kNoNode) g.set_right(lo, v);
    if (hi != kNoNode) g.set_left(hi, v);
}

inline void stitch_out(OverlayGraph& g, NodeId v) {
    const NodeId lo = scan_live(g, v, -1);
    const NodeId hi = scan_live(g, v, +1);
    if (lo != kNoNode) g.set_right(lo, hi);
    if (hi != kNoNode) g.set_left(hi, lo);
    g.set_left(v, kNoNode);
    g.set_right(v, kNoNode);
}

}  // namespace detail

/// Adds v to the overlay.
///
/// v links to its nearest live neighbors on both sides, then draws ell
/// inverse-distance sinks over the whole line and maps each absent sink to
/// the closest live node. It then picks K ~ Poisson(ell) distinct live nodes
/// (K capped at the number of other live nodes) by inverse distance from v;
/// each one redirects at most one existing link to v according to `policy`.
/// Requesters without long links are skipped. Joining an empty graph is
/// allowed and leaves v unlinked.
template <class URBG>
void join(OverlayGraph& g, const LineSampler& sampler, NodeId v, int ell, ReplacementPolicy policy, URBG& rng) {
    if (v < 0 || v >= g.size()) throw std::out_of_range("node out of range");
    if (g.alive(v)) throw std::invalid_argument("node already live");
    if (ell < 1) throw std::invalid_argument("link count must be at least 1");

    g.set_alive(v, true);
    g.clear_links(v);
    detail::stitch_in(g, v);
    const NodeId others = g.live_count() - 1;
    if (others == 0) return;

    for (int i = 0; i < ell; ++i) g.add_link(v, locate_or_nearest(g, sampler(v, rng), v));

    const int requested = std::min(poisson_sample(static_cast<double>(ell), rng), static_cast<int>(others));
    std::vector<double> dists;
    for (NodeId u : detail::sample_requesters(g, sampler, v, requested, rng)) {
        const auto links = g.links(u);
        if (links.empty()) continue;
        dists.clear();
        for (const auto& link : links) dists.push_back(static_cast<double>(distance(u, link.sink)));
        const double fresh = static_cast<double>(distance(u, v));
        if (policy == ReplacementPolicy::InverseDistance) {
            if (auto slot = replacement_decision(dists, fresh, rng)) g.replace_link(u, *slot, v);
        } else {
            double old_mass = 0.0;
            for (double d : dists) old_mass += 1.0 / d;
            const double accept = (1.0 / fresh) / (old_mass + 1.0 / fresh);
            if (uniform01(rng) < accept) {
                const auto oldest = std::min_element(links.begin(), links.end(),
                                                     [](const LongLink& a, const LongLink& b) { return a.age < b.age; });
                g.replace_link(u, static_cast<std::size_t>(oldest - links.begin()), v);
            }
        }
    }
}

template <class URBG>
void join(OverlayGraph& g, NodeId v, int ell, ReplacementPolicy policy, URBG& rng) {
    const LineSampler sampler(g.size());
    join(g, sampler, v, ell, policy, rng);
}

/// Removes v. Its immediate neighbors are stitched across it and its own
/// links are dropped. With `repair`, every live node holding a link to v
/// redraws that link by inverse distance over the remaining live nodes;
/// otherwise those links dangle until routing finds v dead.
template <class URBG>
void leave(OverlayGraph& g, const LineSampler& sampler, NodeId v, bool repair, URBG& rng) {
    if (v < 0 || v >= g.size()) throw std::out_of_range("node out of range");
    if (!g.alive(v)) throw std::invalid_argument("node not live");
    g.set_alive(v, false);
    detail::stitch_out(g, v);
    g.clear_links(v);
    if (!repair) return;
    for (NodeId u = 0; u < g.size(); ++u) {
        if (!g.alive(u)) continue;
        if (g.live_count() < 2) {
            g.erase_links_if(u, [v](const LongLink& l) { return l.sink == v; });
            continue;
        }
        const auto links = g.links(u);
        for (std::size_t i = 0; i < links.size(); ++i)
            if (links[i].sink == v) g.replace_link(u, i, sample_live_sink(g, sampler, u, rng, 1024));
    }
}

template <class URBG>
void leave(OverlayGraph& g, NodeId v, bool repair, URBG& rng) {
    const LineSampler sampler(g.size());
    leave(g, sampler, v, repair, rng);
}

/// Builds an n-node overlay by joining every position once, in a uniformly
/// random order.
template <class URBG>
OverlayGraph build_by_joins(NodeId n, int ell, ReplacementPolicy policy, URBG& rng) {
    OverlayGraph g = empty_overlay(n);
    const LineSampler sampler(n);
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (NodeId v : order) join(g, sampler, v, ell, policy, rng);
    return g;
}

/// Long-link length histogram: entry d is the fraction of all long links
/// of length d (index 0 unused). Raw draws, duplicates included.
inline std::vector<double> link_length_distribution(const OverlayGraph& g) {
    std::vector<double> hist(static_cast<std::size_t>(g.size()), 0.0);
    std::size_t total = 0;
    for (NodeId u = 0; u < g.size(); ++u)
        for (const auto& link : g.links(u)) {
            hist[static_cast<std::size_t>(distance(u, link.sink))] += 1.0;
            ++total;
        }
    if (total > 0)
        for (double& h : hist) h /= static_cast<double>(total);
    return hist;
}

/// Expected link-length law of the ideal inverse-distance construction on a
/// complete line of n nodes, averaged over source positions.
inline std::vector<double> ideal_length_distribution(NodeId n) {
    const auto h = harmonic_table(n);
    // coeff[d] accumulates sum_u (#sides of u reaching distance d) / mass(u).
    std::vector<double> diff(static_cast<std::size_t>(n) + 1, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        const auto a = static_cast<std::size_t>(u), b = static_cast<std::size_t>(n - 1 - u);
        const double inv_mass = 1.0 / (h[a] + h[b]);
        const std::size_t lo = std::min(a, b), hi = std::max(a, b);
        diff[1] += 2.0 * inv_mass;
        diff[lo + 1] -= inv_mass;
        diff[hi + 1] -= inv_mass;
    }
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    double coeff = 0.0;
    for (std::size_t d = 1; d < out.size(); ++d) {
        coeff += diff[d];
        out[d] = coeff / static_cast<double>(d) / static_cast<double>(n);
    }
    return out;
}

}  // namespace swnet

#endif  // SWNET_DYNAMICS_HPP
