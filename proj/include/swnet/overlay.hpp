#ifndef SWNET_OVERLAY_HPP
#define SWNET_OVERLAY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "swnet/linkgen.hpp"
#include "swnet/rng.hpp"

namespace swnet {

struct LongLink {
    NodeId sink = kNoNode;
    std::uint32_t age = 0;  // per-node creation counter; larger is newer

    friend bool operator==(const LongLink&, const LongLink&) = default;
};

/// Nodes at positions 0..n-1 of a line. Each node has up to two immediate
/// neighbors (nearest live node on each side at the time they were stitched)
/// and a list of long-distance links. Liveness is a separate flag: links into
/// a dead node stay in place until something repairs them.
class OverlayGraph {
public:
    OverlayGraph() = default;

    /// All nodes alive, immediate links to +-1, no long links.
    explicit OverlayGraph(NodeId n)
        : n_(n),
          alive_(static_cast<std::size_t>(n), 1),
          immediate_(static_cast<std::size_t>(n)),
          links_(static_cast<std::size_t>(n)),
          next_age_(static_cast<std::size_t>(n), 0),
          live_count_(n) {
        if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
        for (NodeId u = 0; u < n; ++u)
            immediate_[idx(u)] = {u > 0 ? u - 1 : kNoNode, u + 1 < n ? u + 1 : kNoNode};
    }

    NodeId size() const noexcept { return n_; }
    NodeId live_count() const noexcept { return live_count_; }

    bool alive(NodeId u) const { return alive_[idx(u)] != 0; }
    void set_alive(NodeId u, bool value) {
        auto& flag = alive_[idx(u)];
        if ((flag != 0) == value) return;
        flag = value ? 1 : 0;
        live_count_ += value ? 1 : -1;
    }

    /// Immediate neighbor below / above u, or kNoNode.
    NodeId left(NodeId u) const { return immediate_[idx(u)][0]; }
    NodeId right(NodeId u) const { return immediate_[idx(u)][1]; }
    void set_left(NodeId u, NodeId v) { immediate_[idx(u)][0] = v; }
    void set_right(NodeId u, NodeId v) { immediate_[idx(u)][1] = v; }

    std::span<const LongLink> links(NodeId u) const { return links_[idx(u)]; }

    void add_link(NodeId u, NodeId sink) { links_[idx(u)].push_back({sink, next_age_[idx(u)]++}); }

    /// Redirects link `index` of u to `sink`; the link becomes u's newest.
    void replace_link(NodeId u, std::size_t index, NodeId sink) {
        links_[idx(u)].at(index) = {sink, next_age_[idx(u)]++};
    }

    void clear_links(NodeId u) { links_[idx(u)].clear(); }

    template <class Pred>
    void erase_links_if(NodeId u, Pred pred) {
        std::erase_if(links_[idx(u)], pred);
    }

    std::size_t total_links() const {
        std::size_t total = 0;
        for (const auto& l : links_) total += l.size();
        return total;
    }

    /// Live positions in increasing order.
    std::vector<NodeId> live_nodes() const {
        std::vector<NodeId> out;
        out.reserve(static_cast<std::size_t>(live_count_));
        for (NodeId u = 0; u < n_; ++u)
            if (alive_[idx(u)]) out.push_back(u);
        return out;
    }

    friend bool operator==(const OverlayGraph&, const OverlayGraph&) = default;

private:
    static std::size_t idx(NodeId u) { return static_cast<std::size_t>(u); }

    NodeId n_ = 0;
    std::vector<std::uint8_t> alive_;
    std::vector<std::array<NodeId, 2>> immediate_;
    std::vector<std::vector<LongLink>> links_;
    std::vector<std::uint32_t> next_age_;
    NodeId live_count_ = 0;
};

// Failure models.

struct NoFailures {};
struct LinkFailure {
    double p_present = 1.0;
};
struct NodeBinomialPresence {
    double p_present = 1.0;
};
struct NodeGeneralFailure {
    double p_fail = 0.0;
};

using FailureModel = std::variant<NoFailures, LinkFailure, NodeBinomialPresence, NodeGeneralFailure>;

namespace detail {

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
}

// Nearest live node strictly below / above u, or kNoNode.
inline NodeId scan_live(const OverlayGraph& g, NodeId u, int step) {
    for (NodeId v = u + step; v >= 0 && v < g.size(); v += step)
        if (g.alive(v)) return v;
    return kNoNode;
}

}  // namespace detail

/// Inverse-distance draw for u restricted to live nodes other than u.
/// Rejection against the full-line law; after `max_rejections` misses the
/// remaining draw is made exactly over the enumerated live set, which leaves
/// the output law unchanged.
template <class URBG>
NodeId sample_live_sink(const OverlayGraph& g, const LineSampler& sampler, NodeId u, URBG& rng,
                        int max_rejections = 64) {
    for (int attempt = 0; attempt < max_rejections; ++attempt) {
        const NodeId v = sampler(u, rng);
        if (g.alive(v)) return v;
    }
    const auto live = g.live_nodes();
    const auto draw = sample_long_links(u, live, 1, rng);
    return draw.front();
}

namespace detail {

template <class URBG>
void add_long_links(OverlayGraph& g, NodeId u, const LinkDistribution& dist, const LineSampler* sampler,
                    bool restrict_to_live, URBG& rng) {
    const NodeId n = g.size();
    auto keep = [&](NodeId v) { return v != u && (!restrict_to_live || g.alive(v)); };
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, InversePowerLaw>) {
                for (int i = 0; i < d.links; ++i)
                    g.add_link(u, restrict_to_live ? sample_live_sink(g, *sampler, u, rng) : (*sampler)(u, rng));
            } else if constexpr (std::is_same_v<D, DeterministicBaseB>) {
                for (NodeId v : deterministic_links(u, n, d.base))
                    if (keep(v)) g.add_link(u, v);
            } else if constexpr (std::is_same_v<D, PowersOfB>) {
                for (NodeId v : power_links(u, n, d.base))
                    if (keep(v)) g.add_link(u, v);
            } else {
                for (std::int64_t delta : sample_delta_set(d, rng).offsets) {
                    const std::int64_t v = std::int64_t{u} - delta;
                    if (v >= 0 && v < n && keep(static_cast<NodeId>(v))) g.add_link(u, static_cast<NodeId>(v));
                }
            }
        },
        dist);
}

inline void validate_distribution(const LinkDistribution& dist) {
    std::visit(
        [](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, InversePowerLaw>) {
                if (d.links < 1) throw std::invalid_argument("link count must be at least 1");
            } else if constexpr (std::is_same_v<D, BernoulliDelta>) {
                d.validate();
            } else {
                if (d.base < 2) throw std::invalid_argument("base must be at least 2");
            }
        },
        dist);
}

}  // namespace detail

/// Complete line of n nodes with immediate links and long links per `dist`.
/// Link ages follow creation order within each node.
template <class URBG>
OverlayGraph build(NodeId n, const LinkDistribution& dist, URBG& rng) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    detail::validate_distribution(dist);
    OverlayGraph g(n);
    const LineSampler sampler(n);
    for (NodeId u = 0; u < n; ++u) detail::add_long_links(g, u, dist, &sampler, false, rng);
    return g;
}

/// Every long link survives independently with probability p_present.
/// Immediate links are never touched.
template <class URBG>
OverlayGraph apply_link_failures(OverlayGraph g, double p_present, URBG& rng) {
    detail::check_probability(p_present);
    for (NodeId u = 0; u < g.size(); ++u)
        g.erase_links_if(u, [&](const LongLink&) { return !bernoulli(rng, p_present); });
    return g;
}

/// Each position is present independently with probability p_present and
/// links are drawn among present nodes only. Absent nodes are dead and own
/// no links.
template <class URBG>
OverlayGraph build_binomial_presence(NodeId n, double p_present, const LinkDistribution& dist, URBG& rng) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    detail::check_probability(p_present);
    detail::validate_distribution(dist);
    OverlayGraph g(n);
    for (NodeId u = 0; u < n; ++u) g.set_alive(u, bernoulli(rng, p_present));
    if (g.live_count() < 2) throw std::runtime_error("graph too small");

    NodeId prev = kNoNode;
    for (NodeId u = 0; u < n; ++u) {
        g.set_left(u, kNoNode);
        g.set_right(u, kNoNode);
        if (!g.alive(u)) continue;
        g.set_left(u, prev);
        if (prev != kNoNode) g.set_right(prev, u);
        prev = u;
    }
    const LineSampler sampler(n);
    for (NodeId u = 0; u < n; ++u)
        if (g.alive(u)) detail::add_long_links(g, u, dist, &sampler, true, rng);
    return g;
}

/// Each node dies independently with probability p_fail. Links are left as
/// they are; routing discovers dead sinks.
template <class URBG>
OverlayGraph apply_node_failures(OverlayGraph g, double p_fail, URBG& rng) {
    detail::check_probability(p_fail);
    for (NodeId u = 0; u < g.size(); ++u)
        if (bernoulli(rng, p_fail)) g.set_alive(u, false);
    return g;
}

/// build() followed by the given failure model.
template <class URBG>
OverlayGraph build_with_failures(NodeId n, const LinkDistribution& dist, const FailureModel& failures, URBG& rng) {
    return std::visit(
        [&](const auto& f) -> OverlayGraph {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NoFailures>) {
                return build(n, dist, rng);
            } else if constexpr (std::is_same_v<F, LinkFailure>) {
                return apply_link_failures(build(n, dist, rng), f.p_present, rng);
            } else if constexpr (std::is_same_v<F, NodeBinomialPresence>) {
                return build_binomial_presence(n, f.p_present, dist, rng);
            } else {
                return apply_node_failures(build(n, dist, rng), f.p_fail, rng);
            }
        },
        failures);
}

// Text dump: a header line, then one line per position
//   <pos> <alive> <left> <right> <count> <sink>...
// with sinks sorted ascending (duplicates kept) and -1 for a missing
// immediate neighbor. Link ages are not part of the dump.

inline constexpr const char* kGraphMagic = "swnet-overlay 1";

inline void write_text(std::ostream& os, const OverlayGraph& g) {
    os << kGraphMagic << '\n' << "n " << g.size() << '\n';
    std::vector<NodeId> sinks;
    for (NodeId u = 0; u < g.size(); ++u) {
        sinks.clear();
        for (const auto& link : g.links(u)) sinks.push_back(link.sink);
        std::sort(sinks.begin(), sinks.end());
        os << u << ' ' << (g.alive(u) ? 1 : 0) << ' ' << g.left(u) << ' ' << g.right(u) << ' ' << sinks.size();
        for (NodeId v : sinks) os << ' ' << v;
        os << '\n';
    }
}

inline std::string to_text(const OverlayGraph& g) {
    std::ostringstream os;
    write_text(os, g);
    return os.str();
}

/// Inverse of write_text. Ages are reassigned in sorted-sink order.
inline OverlayGraph read_text(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kGraphMagic) throw std::runtime_error("not an overlay dump");
    std::string key;
    NodeId n = 0;
    if (!(is >> key >> n) || key != "n" || n < 2) throw std::runtime_error("bad overlay header");
    OverlayGraph g(n);
    for (NodeId expected = 0; expected < n; ++expected) {
        NodeId pos = 0, left = 0, right = 0;
        int alive = 0;
        std::size_t count = 0;
        if (!(is >> pos >> alive >> left >> right >> count) || pos != expected)
            throw std::runtime_error("bad overlay record at position " + std::to_string(expected));
        auto valid = [n](NodeId v) { return v == kNoNode || (v >= 0 && v < n); };
        if (!valid(left) || !valid(right)) throw std::runtime_error("immediate link out of range");
        g.set_alive(pos, alive != 0);
        g.set_left(pos, left);
        g.set_right(pos, right);
        for (std::size_t i = 0; i < count; ++i) {
            NodeId v = 0;
            if (!(is >> v) || v < 0 || v >= n) throw std::runtime_error("bad sink at position " + std::to_string(pos));
            g.add_link(pos, v);
        }
    }
    return g;
}

inline OverlayGraph from_text(const std::string& text) {
    std::istringstream is(text);
    return read_text(is);
}

}  // namespace swnet

#endif  // SWNET_OVERLAY_HPP
