#ifndef SWNET_ANALYSIS_HPP
#define SWNET_ANALYSIS_HPP

// Numeric side of the routing bounds: the hitting-time upper bound for
// nonincreasing chains, the expected per-step drop of single-link greedy
// routing, the lower-bound evaluator built on the aggregate interval chain,
// and simulators for the offset-set chains themselves.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "swnet/linkgen.hpp"
#include "swnet/rng.hpp"
#include "swnet/routing.hpp"

namespace swnet {

// ---------------------------------------------------------------------------
// Hitting-time upper bound

/// Expected drop mu(z) of a nonincreasing chain started at x0.
struct JumpSpec {
    std::function<double(double)> mu;
    double x0 = 1.0;
    /// Integer-valued chain: the bound is the exact sum of 1/mu(k) for
    /// k = 1..floor(x0) instead of an integral.
    bool integer_steps = false;
};

/// T(x0) <= integral_1^x0 dz / mu(z), valid when mu is nondecreasing (the
/// caller's responsibility). Continuous specs are integrated with adaptive
/// Gauss-Kronrod over geometric segments to a relative tolerance of 1e-9.
inline double karp_upper_bound(const JumpSpec& spec) {
    if (!spec.mu) throw std::invalid_argument("missing mu");
    if (!(spec.x0 > 1.0)) throw std::invalid_argument("x0 must exceed 1");
    auto inv = [&](double z) {
        const double m = spec.mu(z);
        if (!(m > 0.0)) throw std::domain_error("mu must be positive");
        return 1.0 / m;
    };
    if (spec.integer_steps) {
        double sum = 0.0;
        const auto top = static_cast<std::int64_t>(std::floor(spec.x0));
        for (std::int64_t k = 1; k <= top; ++k) sum += inv(static_cast<double>(k));
        return sum;
    }
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    for (double lo = 1.0; lo < spec.x0;) {
        const double hi = std::min(2.0 * lo, spec.x0);
        total += gauss_kronrod<double, 31>::integrate(inv, lo, hi, 15, 1e-9);
        lo = hi;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Single-link expected drop

namespace detail {

struct HarmonicCache {
    std::vector<double> h;
    double operator()(std::int64_t i) {
        if (i <= 0) return 0.0;
        if (static_cast<std::size_t>(i) >= h.size()) {
            std::size_t k = h.empty() ? 1 : h.size();
            h.resize(static_cast<std::size_t>(i) + 1, 0.0);
            for (; k < h.size(); ++k) h[k] = h[k - 1] + 1.0 / static_cast<double>(k);
        }
        return h[static_cast<std::size_t>(i)];
    }
};

inline double single_link_mu(std::int64_t k, std::int64_t n1, std::int64_t n2, Sidedness side, HarmonicCache& H) {
    if (k < 1 || k > n1 || n2 < 0) throw std::out_of_range("need 1 <= k <= n1 and n2 >= 0");
    const std::int64_t behind = n1 - k;     // nodes on the far side of the current node
    const std::int64_t ahead = n2 + k;      // nodes between here and the end past the target
    const double mass = H(behind) + H(ahead);
    // Link lands short of or on the target at distance i <= k: progress i.
    double covered = static_cast<double>(k);
    // Link points away from the target: the immediate neighbor gives progress 1.
    covered += H(behind);
    if (side == Sidedness::OneSided) {
        // Any link past the target is unusable; progress 1.
        covered += H(ahead) - H(k);
        return covered / mass;
    }
    // Link lands past the target at distance 2k - i, i in [max(1, k - n2), k - 1]:
    // progress i. Written as sum_{j=k+1}^{2k-lo} (2k - j)/j.
    const std::int64_t lo = std::max<std::int64_t>(1, k - n2);
    if (lo <= k - 1) covered += 2.0 * static_cast<double>(k) * (H(2 * k - lo) - H(k)) - static_cast<double>(k - lo);
    // Link lands at least k past the target: progress 1.
    if (ahead >= 2 * k) covered += H(ahead) - H(2 * k - 1);
    return covered / mass;
}

}  // namespace detail

/// Expected distance gained in one greedy step with one inverse-distance
/// long link plus immediate neighbors. The current node is k away from the
/// target, n1 - k nodes lie behind it and n2 nodes lie past the target, so
/// the line has n1 + n2 + 1 nodes. Two-sided routing may land past the
/// target; one-sided routing never does. Always exceeds k / (2 H_{n1+n2}).
inline double single_link_mu(std::int64_t k, std::int64_t n1, std::int64_t n2,
                             Sidedness side = Sidedness::TwoSided) {
    detail::HarmonicCache H;
    return detail::single_link_mu(k, n1, n2, side, H);
}

/// Upper bound on expected single-link delivery time on a line of n nodes
/// from distance at most n-1: the integer-step hitting-time sum over the
/// nondecreasing envelope of the worst-placement drop min_{placements} mu_k.
inline double single_link_karp_bound(std::int64_t n, Sidedness side = Sidedness::TwoSided) {
    if (n < 2) throw std::invalid_argument("line needs at least 2 nodes");
    detail::HarmonicCache H;
    H(4 * n);
    const std::int64_t others = n - 1;
    std::vector<double> worst(static_cast<std::size_t>(others) + 1, 0.0);
    for (std::int64_t k = 1; k <= others; ++k) {
        double m = std::numeric_limits<double>::infinity();
        for (std::int64_t n1 = k; n1 <= others; ++n1) m = std::min(m, detail::single_link_mu(k, n1, others - n1, side, H));
        worst[static_cast<std::size_t>(k)] = m;
    }
    for (std::int64_t k = others - 1; k >= 1; --k)
        worst[static_cast<std::size_t>(k)] = std::min(worst[static_cast<std::size_t>(k)], worst[static_cast<std::size_t>(k) + 1]);
    JumpSpec spec;
    spec.x0 = static_cast<double>(others);
    spec.integer_steps = true;
    spec.mu = [&worst](double z) { return worst[static_cast<std::size_t>(z)]; };
    return karp_upper_bound(spec);
}

// ---------------------------------------------------------------------------
// Lower bound

struct LowerBoundInputs {
    std::map<std::int64_t, double> p;  // Pr[delta in Delta]; +-1 must be 1
    double ell = 0.0;                  // E|Delta|
    std::int64_t n = 0;                // start uniform on 1..n
    Sidedness sidedness = Sidedness::OneSided;
};

struct LowerBoundReport {
    double a = 0.0;        // 3 ell ln^3 n
    double epsilon = 0.0;  // ln^-3 n
    double U = 0.0;        // ln a
    std::int64_t phases = 0;  // floor(ln n / ln a)
    double L = 0.0;        // 6 ell, or 6 ell + 3 ell^2 two-sided
    std::vector<double> gamma;  // gamma_0 .. gamma_{phases+1}
    double t_gamma_sum = 0.0;   // sum over phases with the gamma_i terms
    double t_closed = 0.0;      // closed form in L
    double value = 0.0;         // T / (eps T + 1 - eps) with T = t_closed
};

/// Inputs for the inverse-distance model with `links` long links: p_delta is
/// the chance that a node near the middle of a line of n nodes draws offset
/// delta at least once, and +-1 is always present.
inline LowerBoundInputs inverse_power_lower_bound_inputs(std::int64_t n, int links, Sidedness side) {
    LowerBoundInputs in;
    in.n = n;
    in.sidedness = side;
    const double mass = 2.0 * harmonic(n / 2);
    for (std::int64_t d = 1; d <= n; ++d) {
        const double w = (1.0 / static_cast<double>(d)) / mass;
        const double p = d == 1 ? 1.0 : 1.0 - std::pow(1.0 - w, links);
        in.p[d] = p;
        in.p[-d] = p;
    }
    for (const auto& entry : in.p) in.ell += entry.second;
    return in;
}

/// Evaluates the expected-hops lower bound for greedy routing from a start
/// uniform on 1..n to 0 under offset law p. Uses the explicit constants
/// a = 3 ell ln^3 n, eps = ln^-3 n, U = ln a and returns
///   T = ln a * F / (ln(1/(1 - 1/a)) + 2 ln(1 + L/F)),  F = floor(ln n / ln a),
/// folded through E[tau] >= T / (eps T + 1 - eps). When F = 0 the integral
/// reduces to ln n / ln a.
inline LowerBoundReport mean_lower_bound(const LowerBoundInputs& in) {
    if (in.n < 3) throw std::invalid_argument("n must be at least 3");
    if (!(in.ell >= 1.0)) throw std::invalid_argument("ell must be at least 1");
    auto prob = [&](std::int64_t d) {
        auto it = in.p.find(d);
        return it == in.p.end() ? 0.0 : it->second;
    };
    if (prob(1) != 1.0 || prob(-1) != 1.0) throw std::invalid_argument("offsets -1 and +1 must have probability 1");
    for (const auto& [d, p] : in.p)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
    const bool two_sided = in.sidedness == Sidedness::TwoSided;
    if (two_sided) {
        BernoulliDelta check{in.p};
        if (!check.symmetric()) throw std::invalid_argument("two-sided bound needs a symmetric offset law");
        if (!check.unimodal()) throw std::invalid_argument("two-sided bound needs a unimodal offset law");
    }

    LowerBoundReport r;
    const double ln_n = std::log(static_cast<double>(in.n));
    const double ln3 = ln_n * ln_n * ln_n;
    r.a = 3.0 * in.ell * ln3;
    r.epsilon = 1.0 / ln3;
    r.U = std::log(r.a);
    r.phases = static_cast<std::int64_t>(std::floor(ln_n / r.U));
    r.L = two_sided ? 6.0 * in.ell + 3.0 * in.ell * in.ell : 6.0 * in.ell;
    const double c = -std::log1p(-1.0 / r.a);

    // Dense view of p over [-reach, reach], with p_0 = 1 for the pair counts.
    std::int64_t reach = 1;
    for (const auto& entry : in.p) reach = std::max(reach, std::abs(entry.first));
    auto dense_index = [reach](std::int64_t d) { return static_cast<std::size_t>(d + reach); };
    std::vector<double> dense(static_cast<std::size_t>(2 * reach + 1), 0.0);
    for (const auto& [d, p] : in.p) dense[dense_index(d)] = p;
    dense[dense_index(0)] = 1.0;
    std::vector<double> prefix(dense.size() + 1, 0.0);  // prefix[j] = sum dense[0..j-1]
    for (std::size_t j = 0; j < dense.size(); ++j) prefix[j + 1] = prefix[j] + dense[j];
    auto p_range = [&](std::int64_t lo, std::int64_t hi) {  // sum p_d for d in [lo, hi]
        lo = std::max(lo, -reach);
        hi = std::min(hi, reach);
        if (lo > hi) return 0.0;
        return prefix[dense_index(hi) + 1] - prefix[dense_index(lo)];
    };
    // sum_{m in [lo, hi]} b_m with b = p * p (convolution over all integers).
    auto b_range = [&](std::int64_t lo, std::int64_t hi) {
        double s = 0.0;
        for (std::int64_t i = -reach; i <= reach; ++i) {
            const double pi = dense[dense_index(i)];
            if (pi != 0.0) s += pi * p_range(lo - i, hi - i);
        }
        return s;
    };

    // A_i = { k >= 1 : a^i - 1 <= k < a^(i+1) - 1 }; gamma_i = sum_{k in A_i} 2 p_k + q_k
    // with q_k = b_{2k-1} + b_{2k}.
    const auto count = static_cast<std::size_t>(r.phases + 2);
    r.gamma.assign(count, 0.0);
    const double cap = static_cast<double>(reach) + 1.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double lo_real = std::pow(r.a, static_cast<double>(i)) - 1.0;
        const double hi_real = std::pow(r.a, static_cast<double>(i) + 1.0) - 1.0;
        if (lo_real > cap) break;
        const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lo_real)));
        const auto hi = static_cast<std::int64_t>(std::ceil(std::min(hi_real, cap + 1.0))) - 1;
        if (lo > hi) continue;
        double g = 2.0 * p_range(lo, hi);
        if (two_sided) g += b_range(2 * lo - 1, 2 * hi);
        r.gamma[i] = g;
    }

    for (std::int64_t i = 0; i < r.phases; ++i) {
        const auto j = static_cast<std::size_t>(i);
        const double window = r.gamma[j] + r.gamma[j + 1] + r.gamma[j + 2];
        r.t_gamma_sum += r.U / (c + 2.0 * std::log1p(window));
    }
    if (r.phases >= 1) {
        const double f = static_cast<double>(r.phases);
        r.t_closed = r.U * f / (c + 2.0 * std::log1p(r.L / f));
    } else {
        r.t_closed = ln_n / r.U;
    }
    r.value = r.t_closed / (r.epsilon * r.t_closed + 1.0 - r.epsilon);
    return r;
}

/// log n / log ell: with ell links per node at most ell^k nodes are reachable
/// in k steps.
inline double tree_lower_bound(double n, double ell) {
    if (!(ell >= 2.0)) throw std::invalid_argument("ell must be at least 2");
    if (!(n >= 1.0)) throw std::invalid_argument("n must be at least 1");
    return std::log(n) / std::log(ell);
}

// ---------------------------------------------------------------------------
// Offset-set chains. Positions are labelled relative to the target at 0; a
// node at x moves to x - delta for some delta in its offset set.

namespace detail {

struct Choice {
    std::int64_t delta;
    std::int64_t next;
};

inline Choice successor(std::int64_t x, const DeltaSet& set, Sidedness side) {
    const auto& d = set.offsets;
    if (side == Sidedness::OneSided) {
        // Largest delta <= x gives the smallest non-negative label.
        auto it = std::upper_bound(d.begin(), d.end(), x);
        if (it == d.begin()) throw std::logic_error("offset set lacks +1");
        --it;
        return {*it, x - *it};
    }
    auto above = std::upper_bound(d.begin(), d.end(), x);  // first delta > x
    std::optional<Choice> best;
    auto consider = [&](std::vector<std::int64_t>::const_iterator it) {
        const Choice c{*it, x - *it};
        if (!best) {
            best = c;
            return;
        }
        const auto a = std::abs(c.next), b = std::abs(best->next);
        if (a < b || (a == b && c.next >= 0 && best->next < 0)) best = c;
    };
    if (above != d.end()) consider(above);
    if (above != d.begin()) consider(std::prev(above));
    if (!best) throw std::logic_error("empty offset set");
    return *best;
}

inline int sign_of(std::int64_t x) { return (x > 0) - (x < 0); }

}  // namespace detail

/// Greedy successor of x under offset set `delta`. One-sided: the smallest
/// non-negative label x - delta_i. Two-sided: the label of smallest absolute
/// value; a tie resolves to the non-negative label. 0 is absorbing.
inline std::int64_t step_point_chain(std::int64_t x, const DeltaSet& delta, Sidedness side) {
    if (x == 0) return 0;
    if (!delta.contains(1) || !delta.contains(-1)) throw std::invalid_argument("offset set must contain -1 and +1");
    return detail::successor(x, delta, side).next;
}

/// Interval state of the aggregate chain: [lo, hi], all of one sign, or {0}.
struct AggregateState {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    bool is_zero() const noexcept { return lo == 0 && hi == 0; }
    std::int64_t size() const noexcept { return hi - lo + 1; }
    int sign() const noexcept { return detail::sign_of(lo); }
    bool contains(std::int64_t x) const noexcept { return lo <= x && x <= hi; }

    friend bool operator==(const AggregateState&, const AggregateState&) = default;
};

/// Subrange of S whose members all use offset `delta` and land on the same
/// side (`sign`) of the target.
struct AggregatePart {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t delta;
    int sign;
};

/// Splits S by (chosen offset, successor sign). Parts come back in
/// increasing order and cover S exactly.
inline std::vector<AggregatePart> partition_aggregate(const AggregateState& s, const DeltaSet& delta, Sidedness side) {
    std::vector<AggregatePart> parts;
    for (std::int64_t x = s.lo; x <= s.hi; ++x) {
        const auto c = detail::successor(x, delta, side);
        const int sg = detail::sign_of(c.next);
        if (!parts.empty() && parts.back().delta == c.delta && parts.back().sign == sg && parts.back().hi == x - 1)
            parts.back().hi = x;
        else
            parts.push_back({x, x, c.delta, sg});
    }
    return parts;
}

/// One aggregate-chain step: choose a part of S with probability
/// proportional to its size and shift it by its offset.
template <class URBG>
AggregateState step_aggregate_chain(const AggregateState& s, const DeltaSet& delta, Sidedness side, URBG& rng) {
    if (s.is_zero()) return s;
    if (!delta.contains(1) || !delta.contains(-1)) throw std::invalid_argument("offset set must contain -1 and +1");
    const auto parts = partition_aggregate(s, delta, side);
    const std::int64_t pick = uniform_int(rng, s.lo, s.hi);
    for (const auto& part : parts)
        if (part.lo <= pick && pick <= part.hi) return {part.lo - part.delta, part.hi - part.delta};
    throw std::logic_error("partition does not cover the state");
}

/// Total-variation distance between the law of the point chain X^t (X^0
/// uniform on 1..n) and the law of a uniform element of the aggregate state
/// S^t (S^0 = {1..n}), for t = 0..t_max. Starting points are stratified
/// over 1..n and the aggregate side averages exactly over each S^t, so the
/// t = 0 entry is exactly 0 when samples is a multiple of n.
template <class URBG>
std::vector<double> chain_equivalence_distance(std::int64_t n, const BernoulliDelta& dist, Sidedness side, int t_max,
                                               std::int64_t samples, URBG& rng) {
    if (n < 1 || t_max < 0 || samples < 1) throw std::invalid_argument("bad chain parameters");
    dist.validate();
    const auto width = static_cast<std::size_t>(2 * n + 1);
    const auto steps = static_cast<std::size_t>(t_max) + 1;
    std::vector<std::vector<double>> point(steps, std::vector<double>(width, 0.0));
    std::vector<std::vector<double>> aggregate = point;
    auto slot = [n](std::int64_t x) { return static_cast<std::size_t>(x + n); };

    for (std::int64_t s = 0; s < samples; ++s) {
        std::int64_t x = 1 + s % n;
        for (std::size_t t = 0; t < steps; ++t) {
            point[t][slot(x)] += 1.0;
            if (t + 1 < steps && x != 0) x = step_point_chain(x, sample_delta_set(dist, rng), side);
        }
        AggregateState state{1, n};
        for (std::size_t t = 0; t < steps; ++t) {
            const double w = 1.0 / static_cast<double>(state.size());
            for (std::int64_t y = state.lo; y <= state.hi; ++y) aggregate[t][slot(y)] += w;
            if (t + 1 < steps) state = step_aggregate_chain(state, sample_delta_set(dist, rng), side, rng);
        }
    }
    std::vector<double> tv(steps, 0.0);
    const double norm = static_cast<double>(samples);
    for (std::size_t t = 0; t < steps; ++t) {
        double sum = 0.0;
        for (std::size_t j = 0; j < width; ++j) sum += std::abs(point[t][j] - aggregate[t][j]) / norm;
        tv[t] = 0.5 * sum;
    }
    return tv;
}

/// Checks that every subrange minimum of a positive S (maximum, for a
/// negative S) is one of the admissible boundary points: min S, delta_i,
/// delta_i + 1, and with two-sided routing at most one of beta_i, beta_i + 1
/// where beta_i = ceil((delta_i + delta_{i+1}) / 2) over consecutive
/// offsets on the side of S.
inline bool boundary_points_check(const AggregateState& s, const DeltaSet& delta, Sidedness side) {
    if (s.is_zero()) return true;
    const int sg = s.sign();
    // Work on the positive mirror image.
    AggregateState pos = sg > 0 ? s : AggregateState{-s.hi, -s.lo};
    DeltaSet mirrored = delta;
    if (sg < 0) {
        for (auto& d : mirrored.offsets) d = -d;
        std::sort(mirrored.offsets.begin(), mirrored.offsets.end());
    }
    std::vector<std::int64_t> positives;
    for (auto d : mirrored.offsets)
        if (d > 0) positives.push_back(d);

    std::vector<std::int64_t> basic{pos.lo};
    for (auto d : positives) {
        basic.push_back(d);
        basic.push_back(d + 1);
    }
    std::sort(basic.begin(), basic.end());
    auto is_basic = [&](std::int64_t m) { return std::binary_search(basic.begin(), basic.end(), m); };

    std::vector<std::int64_t> mins;
    for (const auto& part : partition_aggregate(pos, mirrored, side)) mins.push_back(part.lo);

    std::map<std::size_t, int> beta_hits;
    for (auto m : mins) {
        if (is_basic(m)) continue;
        if (side == Sidedness::OneSided) return false;
        bool matched = false;
        for (std::size_t i = 0; i + 1 < positives.size(); ++i) {
            const std::int64_t sum = positives[i] + positives[i + 1];
            const std::int64_t beta = sum / 2 + (sum % 2 != 0 ? 1 : 0);
            if (m == beta || m == beta + 1) {
                ++beta_hits[i];
                matched = true;
            }
        }
        if (!matched) return false;
    }
    for (const auto& entry : beta_hits)
        if (entry.second > 1) return false;
    return true;
}

struct MaxDropResult {
    double a;
    double frequency;  // empirical Pr[|S^{t+1}| <= |S^t| / a]
    double bound;      // 3 ell / a
};

/// Runs the aggregate chain from S = {1..n}, restarting whenever it is
/// absorbed, and reports how often one step shrinks |S| by a factor of at
/// least a, for each a in `ratios`.
template <class URBG>
std::vector<MaxDropResult> max_drop_frequencies(std::int64_t n, const BernoulliDelta& dist, Sidedness side,
                                                const std::vector<double>& ratios, std::int64_t steps, URBG& rng) {
    dist.validate();
    const double ell = dist.expected_size();
    std::vector<std::int64_t> hits(ratios.size(), 0);
    AggregateState state{1, n};
    for (std::int64_t t = 0; t < steps; ++t) {
        if (state.is_zero()) state = {1, n};
        const auto next = step_aggregate_chain(state, sample_delta_set(dist, rng), side, rng);
        for (std::size_t i = 0; i < ratios.size(); ++i)
            if (static_cast<double>(next.size()) * ratios[i] <= static_cast<double>(state.size())) ++hits[i];
        state = next;
    }
    std::vector<MaxDropResult> out;
    for (std::size_t i = 0; i < ratios.size(); ++i)
        out.push_back({ratios[i], static_cast<double>(hits[i]) / static_cast<double>(steps), 3.0 * ell / ratios[i]});
    return out;
}

}  // namespace swnet

#endif  // SWNET_ANALYSIS_HPP
