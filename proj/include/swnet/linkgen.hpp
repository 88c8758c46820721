#ifndef SWNET_LINKGEN_HPP
#define SWNET_LINKGEN_HPP

// Long-distance link generators for nodes embedded at integer positions
// 0..n-1 of a line. Distances are |u - v|; there is no wraparound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "swnet/rng.hpp"

namespace swnet {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

inline std::int64_t distance(NodeId u, NodeId v) noexcept {
    return u > v ? std::int64_t{u} - v : std::int64_t{v} - u;
}

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
inline double harmonic(std::int64_t n) {
    double sum = 0.0;
    // Summing small terms first keeps the rounding error near one ulp.
    for (std::int64_t i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
    return sum;
}

/// Prefix table H_0..H_n for repeated lookups.
inline std::vector<double> harmonic_table(std::int64_t n) {
    std::vector<double> h(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::int64_t i = 1; i <= n; ++i)
        h[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i - 1)] + 1.0 / static_cast<double>(i);
    return h;
}

/// Probability that each member of `population` (other than u) is chosen as
/// a long-distance sink of u: (1/d(u,v)) / sum_{v' != u} 1/d(u,v').
/// Entries come back in population order; u itself is skipped.
inline std::vector<std::pair<NodeId, double>> harmonic_weights(NodeId u, std::span<const NodeId> population) {
    std::vector<std::pair<NodeId, double>> out;
    out.reserve(population.size());
    double total = 0.0;
    for (NodeId v : population) {
        if (v == u) continue;
        const double w = 1.0 / static_cast<double>(distance(u, v));
        out.emplace_back(v, w);
        total += w;
    }
    if (out.empty()) throw std::invalid_argument("no candidate sinks");
    for (auto& [v, w] : out) w /= total;
    return out;
}

/// Draws ell sinks for u independently, with replacement, from
/// harmonic_weights(u, population). Duplicates are kept as drawn.
template <class URBG>
std::vector<NodeId> sample_long_links(NodeId u, std::span<const NodeId> population, int ell, URBG& rng) {
    if (ell < 1) throw std::invalid_argument("link count must be at least 1");
    const auto weights = harmonic_weights(u, population);
    std::vector<double> cumulative;
    cumulative.reserve(weights.size());
    double acc = 0.0;
    for (const auto& entry : weights) cumulative.push_back(acc += entry.second);

    std::vector<NodeId> sinks;
    sinks.reserve(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) {
        const double x = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end()) --it;
        sinks.push_back(weights[static_cast<std::size_t>(it - cumulative.begin())].first);
    }
    return sinks;
}

/// Inverse-distance sampler over the complete line 0..n-1. One draw costs a
/// binary search over the harmonic prefix table, so building a full network
/// is O(n * ell * log n).
class LineSampler {
public:
    explicit LineSampler(NodeId n) : n_(n), prefix_(harmonic_table(n)) {
        if (n < 2) throw std::invalid_argument("no candidate sinks");
    }

    NodeId size() const noexcept { return n_; }

    /// Total inverse-distance mass seen from u: H_u + H_{n-1-u}.
    double mass(NodeId u) const noexcept {
        return prefix_[static_cast<std::size_t>(u)] + prefix_[static_cast<std::size_t>(n_ - 1 - u)];
    }

    template <class URBG>
    NodeId operator()(NodeId u, URBG& rng) const {
        const auto left = static_cast<std::size_t>(u);
        const auto right = static_cast<std::size_t>(n_ - 1 - u);
        double x = uniform01(rng) * (prefix_[left] + prefix_[right]);
        if (x < prefix_[left]) return u - static_cast<NodeId>(offset(x, left));
        x -= prefix_[left];
        return u + static_cast<NodeId>(offset(x, right));
    }

private:
    // Smallest d in [1, limit] with H_d > x.
    std::size_t offset(double x, std::size_t limit) const {
        auto first = prefix_.begin() + 1;
        auto last = prefix_.begin() + static_cast<std::ptrdiff_t>(limit) + 1;
        auto it = std::upper_bound(first, last, x);
        if (it == last) --it;
        return static_cast<std::size_t>(it - prefix_.begin());
    }

    NodeId n_;
    std::vector<double> prefix_;
};

namespace detail {

// Smallest k with b^k >= n (k >= 1 for n >= 2).
inline int ceil_log(std::int64_t n, std::int64_t b) {
    int k = 0;
    std::int64_t power = 1;
    while (power < n) {
        power *= b;
        ++k;
    }
    return k;
}

// Largest k with b^k <= n.
inline int floor_log(std::int64_t n, std::int64_t b) {
    int k = 0;
    std::int64_t power = b;
    while (power <= n) {
        power *= b;
        ++k;
    }
    return k;
}

inline void add_both_directions(NodeId u, std::int64_t n, std::int64_t offset, std::vector<NodeId>& out) {
    if (u - offset >= 0) out.push_back(static_cast<NodeId>(u - offset));
    if (u + offset < n) out.push_back(static_cast<NodeId>(u + offset));
}

inline std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace detail

/// Sinks at u +- j*b^i for j in [1, b-1], i in [0, ceil(log_b n) - 1],
/// clipped to [0, n). Returned sorted and without duplicates; the distance-1
/// sinks are the immediate neighbors.
inline std::vector<NodeId> deterministic_links(NodeId u, NodeId n, int b) {
    if (b < 2) throw std::invalid_argument("base must be at least 2");
    std::vector<NodeId> out;
    const int digits = detail::ceil_log(n, b);
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i, scale *= b)
        for (std::int64_t j = 1; j < b; ++j) detail::add_both_directions(u, n, j * scale, out);
    return detail::sorted_unique(std::move(out));
}

/// Sinks at u +- b^i for i in [0, floor(log_b n)], clipped to [0, n).
inline std::vector<NodeId> power_links(NodeId u, NodeId n, int b) {
    if (b < 2) throw std::invalid_argument("base must be at least 2");
    std::vector<NodeId> out;
    const int top = detail::floor_log(n, b);
    std::int64_t scale = 1;
    for (int i = 0; i <= top; ++i, scale *= b) detail::add_both_directions(u, n, scale, out);
    return detail::sorted_unique(std::move(out));
}

/// A realised offset set. Node x links to x - delta for every delta in
/// `offsets`; -1 and +1 are always present.
struct DeltaSet {
    std::vector<std::int64_t> offsets;  // sorted ascending, no zero

    bool contains(std::int64_t delta) const {
        return std::binary_search(offsets.begin(), offsets.end(), delta);
    }
    std::size_t size() const noexcept { return offsets.size(); }
};

/// Offset distribution where each delta is included independently with
/// probability p_delta. Offsets absent from the map have probability zero.
struct BernoulliDelta {
    std::map<std::int64_t, double> inclusion;

    void validate() const {
        for (const auto& [delta, p] : inclusion) {
            if (delta == 0) throw std::invalid_argument("offset 0 is not a link");
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("inclusion probability outside [0,1]");
        }
        if (probability(1) != 1.0 || probability(-1) != 1.0)
            throw std::invalid_argument("offsets -1 and +1 must have probability 1");
    }

    double probability(std::int64_t delta) const {
        auto it = inclusion.find(delta);
        return it == inclusion.end() ? 0.0 : it->second;
    }

    /// E|Delta|.
    double expected_size() const {
        double sum = 0.0;
        for (const auto& entry : inclusion) sum += entry.second;
        return sum;
    }

    bool symmetric() const {
        for (const auto& [delta, p] : inclusion)
            if (probability(-delta) != p) return false;
        return true;
    }

    /// Nonincreasing in |delta| on each side of the origin.
    bool unimodal() const {
        double prev = 1.0;
        for (auto it = inclusion.lower_bound(1); it != inclusion.end(); ++it) {
            if (it->second > prev) return false;
            prev = it->second;
        }
        prev = 1.0;
        for (auto it = std::make_reverse_iterator(inclusion.lower_bound(0)); it != inclusion.rend(); ++it) {
            if (it->second > prev) return false;
            prev = it->second;
        }
        return true;
    }

    /// p_delta = 1/|delta|^exponent for 1 <= |delta| <= limit.
    static BernoulliDelta inverse_power(std::int64_t limit, double exponent = 1.0) {
        BernoulliDelta d;
        for (std::int64_t k = 1; k <= limit; ++k) {
            const double p = 1.0 / std::pow(static_cast<double>(k), exponent);
            d.inclusion[k] = p;
            d.inclusion[-k] = p;
        }
        return d;
    }
};

template <class URBG>
DeltaSet sample_delta_set(const BernoulliDelta& dist, URBG& rng) {
    dist.validate();
    DeltaSet out;
    for (const auto& [delta, p] : dist.inclusion)
        if (bernoulli(rng, p)) out.offsets.push_back(delta);
    return out;
}

/// Poisson(rate) draw. Callers truncate to their population size.
template <class URBG>
int poisson_sample(double rate, URBG& rng) {
    if (!(rate > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
    return std::poisson_distribution<int>{rate}(rng);
}

// Link-generation schemes.

struct InversePowerLaw {
    int links = 1;
};
struct DeterministicBaseB {
    int base = 2;
};
struct PowersOfB {
    int base = 2;
};

using LinkDistribution = std::variant<InversePowerLaw, DeterministicBaseB, PowersOfB, BernoulliDelta>;

}  // namespace swnet

#endif  // SWNET_LINKGEN_HPP
