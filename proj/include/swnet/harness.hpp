#ifndef SWNET_HARNESS_HPP
#define SWNET_HARNESS_HPP

// Batch experiments over overlays: failure sweeps, heuristic-vs-ideal
// comparisons, scaling sweeps, link-length fidelity, chain checks and bound
// tables. Every trial draws from its own stream derived from the master
// seed, and trial results are reduced in index order from exact integer
// sums, so the CSV is byte-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "swnet/analysis.hpp"
#include "swnet/dynamics.hpp"
#include "swnet/linkgen.hpp"
#include "swnet/overlay.hpp"
#include "swnet/rng.hpp"
#include "swnet/routing.hpp"

namespace swnet {

enum class Experiment { Failures, Distribution, Scaling, Compare, Chains, Bounds };
enum class DistKind { Power1, DetBase, Powers, Bernoulli };
enum class StrategyKind { Terminate, Restart, Backtrack };
enum class FailureKind { Node, Link, Presence };

struct ExperimentConfig {
    Experiment experiment = Experiment::Failures;
    NodeId n = 1 << 14;
    int links = 14;
    int base = 2;
    DistKind dist = DistKind::Power1;
    FailureKind failure = FailureKind::Node;
    std::vector<double> p_grid{0.0};
    std::vector<StrategyKind> strategies{StrategyKind::Terminate};
    int history = 5;
    int max_restarts = 10;
    Sidedness sidedness = Sidedness::TwoSided;
    ReplacementPolicy policy = ReplacementPolicy::InverseDistance;
    int trials = 100;
    int messages = 100;
    int max_hops = 0;  // 0: default_max_hops(n)
    int steps = 8;     // chain length for the chains experiment
    std::vector<NodeId> n_grid;   // scaling / bounds; empty means {n}
    std::vector<int> links_grid;  // scaling / bounds; empty means {links}
    std::uint64_t seed = 1;
    unsigned threads = 1;  // 0: hardware concurrency

    void validate() const;
};

/// Per-configuration tallies. Hop, backtrack and restart statistics cover
/// delivered messages only.
struct TrialStats {
    std::int64_t delivered = 0;
    std::int64_t failed = 0;
    std::int64_t capped = 0;
    std::int64_t hop_sum = 0;
    std::int64_t hop_sq_sum = 0;
    std::int64_t backtrack_sum = 0;
    std::int64_t restart_sum = 0;

    std::int64_t messages() const noexcept { return delivered + failed; }
    double failed_fraction() const noexcept {
        return messages() == 0 ? 0.0 : static_cast<double>(failed) / static_cast<double>(messages());
    }
    double mean_hops() const noexcept {
        return delivered == 0 ? 0.0 : static_cast<double>(hop_sum) / static_cast<double>(delivered);
    }
    /// Sample standard deviation of hops.
    double std_hops() const noexcept {
        if (delivered < 2) return 0.0;
        const double n = static_cast<double>(delivered);
        const double mean = static_cast<double>(hop_sum) / n;
        const double var = (static_cast<double>(hop_sq_sum) - n * mean * mean) / (n - 1.0);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
    double mean_backtracks() const noexcept {
        return delivered == 0 ? 0.0 : static_cast<double>(backtrack_sum) / static_cast<double>(delivered);
    }
    double mean_restarts() const noexcept {
        return delivered == 0 ? 0.0 : static_cast<double>(restart_sum) / static_cast<double>(delivered);
    }

    void record(const RouteResult& r) {
        if (!r.delivered()) {
            ++failed;
            if (r.capped) ++capped;
            return;
        }
        ++delivered;
        hop_sum += r.hops;
        hop_sq_sum += std::int64_t{r.hops} * r.hops;
        backtrack_sum += r.backtracks;
        restart_sum += r.restarts;
    }

    TrialStats& operator+=(const TrialStats& o) {
        delivered += o.delivered;
        failed += o.failed;
        capped += o.capped;
        hop_sum += o.hop_sum;
        hop_sq_sum += o.hop_sq_sum;
        backtrack_sum += o.backtrack_sum;
        restart_sum += o.restart_sum;
        return *this;
    }
};

// ---------------------------------------------------------------------------
// Names

inline const char* to_string(Experiment e) {
    switch (e) {
        case Experiment::Failures: return "failures";
        case Experiment::Distribution: return "distribution";
        case Experiment::Scaling: return "scaling";
        case Experiment::Compare: return "compare";
        case Experiment::Chains: return "chains";
        case Experiment::Bounds: return "bounds";
    }
    return "?";
}

inline const char* to_string(StrategyKind s) {
    switch (s) {
        case StrategyKind::Terminate: return "terminate";
        case StrategyKind::Restart: return "restart";
        case StrategyKind::Backtrack: return "backtrack";
    }
    return "?";
}

inline const char* to_string(DistKind d) {
    switch (d) {
        case DistKind::Power1: return "power1";
        case DistKind::DetBase: return "detbase";
        case DistKind::Powers: return "powers";
        case DistKind::Bernoulli: return "bernoulli";
    }
    return "?";
}

inline const char* to_string(Sidedness s) { return s == Sidedness::OneSided ? "one" : "two"; }

inline const char* to_string(ReplacementPolicy p) {
    return p == ReplacementPolicy::Oldest ? "oldest" : "inverse";
}

inline void ExperimentConfig::validate() const {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (links < 1) throw std::invalid_argument("links must be at least 1");
    if (base < 2) throw std::invalid_argument("base must be at least 2");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (messages < 0) throw std::invalid_argument("messages must be non-negative");
    if (history < 1) throw std::invalid_argument("history must be at least 1");
    if (max_restarts < 0) throw std::invalid_argument("max restarts must be non-negative");
    if (max_hops < 0) throw std::invalid_argument("max hops must be non-negative");
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    if (p_grid.empty()) throw std::invalid_argument("empty probability grid");
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability grid must lie in [0,1]");
    if (strategies.empty()) throw std::invalid_argument("no strategy given");
    for (NodeId m : n_grid)
        if (m < 2) throw std::invalid_argument("n grid entries must be at least 2");
    for (int l : links_grid)
        if (l < 1) throw std::invalid_argument("links grid entries must be at least 1");
}

// ---------------------------------------------------------------------------
// Plumbing

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; callers write results into per-index slots.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.exchange(true)) error = std::current_exception();
                    }
                }
            });
    }
    if (error) std::rethrow_exception(error);
}

namespace detail {

// Stream ids: experiment in the top byte, then a parameter index and a role.
inline std::uint64_t stream_id(Experiment e, std::uint64_t param, std::uint64_t role) {
    return (static_cast<std::uint64_t>(e) << 56) ^ (param << 8) ^ role;
}

enum Role : std::uint64_t { kGraph = 1, kPairs = 2, kStrategy = 16 };

inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string fmt_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", p);
    return buf;
}

inline LinkDistribution make_distribution(const ExperimentConfig& c, NodeId n, int links) {
    switch (c.dist) {
        case DistKind::Power1: return InversePowerLaw{links};
        case DistKind::DetBase: return DeterministicBaseB{c.base};
        case DistKind::Powers: return PowersOfB{c.base};
        case DistKind::Bernoulli: return BernoulliDelta::inverse_power(n);
    }
    throw std::logic_error("unknown distribution");
}

inline bool deterministic_dist(const ExperimentConfig& c) {
    return c.dist == DistKind::DetBase || c.dist == DistKind::Powers;
}

inline RecoveryStrategy make_strategy(const ExperimentConfig& c, StrategyKind s) {
    switch (s) {
        case StrategyKind::Terminate: return Terminate{};
        case StrategyKind::Restart: return RandomRestart{c.max_restarts};
        case StrategyKind::Backtrack: return Backtrack{c.history};
    }
    throw std::logic_error("unknown strategy");
}

template <class URBG>
OverlayGraph build_failed(const ExperimentConfig& c, NodeId n, int links, double p, URBG& rng) {
    const auto dist = make_distribution(c, n, links);
    switch (c.failure) {
        case FailureKind::Node: return apply_node_failures(build(n, dist, rng), p, rng);
        case FailureKind::Link: return apply_link_failures(build(n, dist, rng), p, rng);
        case FailureKind::Presence: return build_binomial_presence(n, p, dist, rng);
    }
    throw std::logic_error("unknown failure model");
}

// `count` ordered pairs of distinct live nodes, uniformly at random.
template <class URBG>
std::vector<std::pair<NodeId, NodeId>> live_pairs(const OverlayGraph& g, int count, URBG& rng) {
    const auto live = g.live_nodes();
    std::vector<std::pair<NodeId, NodeId>> out;
    if (live.size() < 2) return out;
    const auto last = static_cast<std::int64_t>(live.size()) - 1;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto s = uniform_int(rng, 0, last);
        auto d = uniform_int(rng, 0, last - 1);
        if (d >= s) ++d;
        out.emplace_back(live[static_cast<std::size_t>(s)], live[static_cast<std::size_t>(d)]);
    }
    return out;
}

template <class URBG>
RouteResult route_with(const ExperimentConfig& c, const OverlayGraph& g, NodeId s, NodeId d, StrategyKind strategy,
                       int max_hops, URBG& rng) {
    if (deterministic_dist(c)) return route_deterministic(g, s, d, max_hops);
    return route(g, s, d, c.sidedness, make_strategy(c, strategy), max_hops, rng);
}

inline int hop_cap(const ExperimentConfig& c, NodeId n) { return c.max_hops > 0 ? c.max_hops : default_max_hops(n); }

inline const char* strategy_label(const ExperimentConfig& c, StrategyKind s) {
    return deterministic_dist(c) ? "deterministic" : to_string(s);
}

struct RoutingRow {
    std::string experiment;
    NodeId n;
    int links;
    double p;
    std::string strategy;
    std::int64_t trials;
    TrialStats stats;
};

inline void write_routing_row(std::ostream& os, const ExperimentConfig& c, const RoutingRow& r) {
    os << r.experiment << ',' << r.n << ',' << r.links << ',' << c.base << ',' << fmt_p(r.p) << ',' << r.strategy
       << ',' << r.trials << ',' << r.stats.messages() << ',' << r.stats.delivered << ',' << r.stats.failed << ','
       << r.stats.capped << ',' << fmt(r.stats.mean_hops()) << ',' << fmt(r.stats.std_hops()) << ','
       << fmt(r.stats.mean_backtracks()) << ',' << fmt(r.stats.mean_restarts()) << ',' << c.seed << '\n';
}

}  // namespace detail

inline constexpr const char* kRoutingHeader =
    "experiment,n,links,base,p,strategy,trials,messages,delivered,failed,capped,mean_hops,std_hops,"
    "mean_backtracks,mean_restarts,seed";
inline constexpr const char* kDistributionHeader = "experiment,n,links,policy,distance,ideal,derived,abs_error,seed";
inline constexpr const char* kChainsHeader = "experiment,n,sided,metric,param,value,bound,seed";
inline constexpr const char* kBoundsHeader =
    "experiment,n,links,sided,lower_bound,t_closed,t_gamma,tree_bound,karp_upper,mean_hops,seed";

// ---------------------------------------------------------------------------
// Experiments

/// For each p and strategy: a fresh failed graph per trial, `messages`
/// routes between live pairs. All strategies see the same graphs and pairs.
/// Trials left with fewer than two live nodes are skipped and not counted.
inline void run_failures(const ExperimentConfig& c, std::ostream& os) {
    c.validate();
    const auto ns = c.strategies.size();
    os << kRoutingHeader << '\n';
    for (std::size_t pi = 0; pi < c.p_grid.size(); ++pi) {
        const double p = c.p_grid[pi];
        std::vector<std::vector<TrialStats>> per(static_cast<std::size_t>(c.trials), std::vector<TrialStats>(ns));
        std::vector<char> ran(static_cast<std::size_t>(c.trials), 0);
        parallel_for(static_cast<std::size_t>(c.trials), c.threads, [&](std::size_t t) {
            auto grng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kGraph), t);
            OverlayGraph g = [&] {
                try {
                    return detail::build_failed(c, c.n, c.links, p, grng);
                } catch (const std::runtime_error&) {  // too few present nodes
                    return empty_overlay(c.n);
                }
            }();
            if (g.live_count() < 2) return;
            ran[t] = 1;
            auto prng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kPairs), t);
            const auto pairs = detail::live_pairs(g, c.messages, prng);
            for (std::size_t si = 0; si < ns; ++si) {
                auto srng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kStrategy + si), t);
                for (const auto& [s, d] : pairs)
                    per[t][si].record(detail::route_with(c, g, s, d, c.strategies[si], detail::hop_cap(c, c.n), srng));
            }
        });
        const auto trials_run = std::count(ran.begin(), ran.end(), 1);
        for (std::size_t si = 0; si < ns; ++si) {
            TrialStats total;
            for (const auto& row : per) total += row[si];
            detail::write_routing_row(
                os, c, {"failures", c.n, c.links, p, detail::strategy_label(c, c.strategies[si]), trials_run, total});
            if (detail::deterministic_dist(c)) break;  // strategies do not apply
        }
    }
}

/// Failed-search fraction of ideal-built versus join-built overlays under
/// the same node-failure pattern and the same message pairs, for the first
/// strategy in the config.
inline void run_compare(const ExperimentConfig& c, std::ostream& os) {
    c.validate();
    const StrategyKind strategy = c.strategies.front();
    os << kRoutingHeader << '\n';
    for (std::size_t pi = 0; pi < c.p_grid.size(); ++pi) {
        const double p = c.p_grid[pi];
        std::vector<TrialStats> ideal(static_cast<std::size_t>(c.trials)), heuristic(ideal.size());
        std::vector<char> ran(ideal.size(), 0);
        parallel_for(ideal.size(), c.threads, [&](std::size_t t) {
            auto grng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kGraph), t);
            OverlayGraph a = build(c.n, InversePowerLaw{c.links}, grng);
            OverlayGraph b = build_by_joins(c.n, c.links, c.policy, grng);
            for (NodeId u = 0; u < c.n; ++u)
                if (bernoulli(grng, p)) {
                    a.set_alive(u, false);
                    b.set_alive(u, false);
                }
            if (a.live_count() < 2) return;
            ran[t] = 1;
            auto prng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kPairs), t);
            const auto pairs = detail::live_pairs(a, c.messages, prng);
            auto srng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kStrategy), t);
            const int cap = detail::hop_cap(c, c.n);
            for (const auto& [s, d] : pairs) ideal[t].record(route(a, s, d, c.sidedness, detail::make_strategy(c, strategy), cap, srng));
            for (const auto& [s, d] : pairs)
                heuristic[t].record(route(b, s, d, c.sidedness, detail::make_strategy(c, strategy), cap, srng));
        });
        const auto trials_run = std::count(ran.begin(), ran.end(), 1);
        TrialStats ti, th;
        for (std::size_t t = 0; t < ideal.size(); ++t) {
            ti += ideal[t];
            th += heuristic[t];
        }
        detail::write_routing_row(os, c, {"compare-ideal", c.n, c.links, p, to_string(strategy), trials_run, ti});
        detail::write_routing_row(os, c, {"compare-heuristic", c.n, c.links, p, to_string(strategy), trials_run, th});
    }
}

/// Mean hops on failure-free graphs over the n and link grids. Standard
/// errors follow from std_hops / sqrt(delivered).
inline void run_scaling(const ExperimentConfig& c, std::ostream& os) {
    c.validate();
    const auto ns = c.n_grid.empty() ? std::vector<NodeId>{c.n} : c.n_grid;
    const auto ls = c.links_grid.empty() ? std::vector<int>{c.links} : c.links_grid;
    const StrategyKind strategy = c.strategies.front();
    os << kRoutingHeader << '\n';
    std::uint64_t param = 0;
    for (NodeId n : ns)
        for (int links : ls) {
            const auto pi = param++;
            std::vector<TrialStats> per(static_cast<std::size_t>(c.trials));
            parallel_for(per.size(), c.threads, [&](std::size_t t) {
                auto grng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kGraph), t);
                const OverlayGraph g = build(n, detail::make_distribution(c, n, links), grng);
                auto prng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kPairs), t);
                auto srng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kStrategy), t);
                for (const auto& [s, d] : detail::live_pairs(g, c.messages, prng))
                    per[t].record(detail::route_with(c, g, s, d, strategy, detail::hop_cap(c, n), srng));
            });
            TrialStats total;
            for (const auto& s : per) total += s;
            detail::write_routing_row(os, c,
                                      {"scaling", n, links, 0.0, detail::strategy_label(c, strategy), c.trials, total});
        }
}

struct DistributionResult {
    std::vector<double> ideal;    // index = distance, entry 0 unused
    std::vector<double> derived;  // raw link fractions over all builds
    double max_abs_error = 0.0;
};

/// Link-length law of `trials` join-built overlays against the ideal law.
inline DistributionResult distribution_study(const ExperimentConfig& c) {
    c.validate();
    std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(c.trials));
    parallel_for(counts.size(), c.threads, [&](std::size_t t) {
        auto rng = make_rng(c.seed, detail::stream_id(c.experiment, 0, detail::kGraph), t);
        const OverlayGraph g = build_by_joins(c.n, c.links, c.policy, rng);
        auto& h = counts[t];
        h.assign(static_cast<std::size_t>(c.n), 0);
        for (NodeId u = 0; u < c.n; ++u)
            for (const auto& link : g.links(u)) ++h[static_cast<std::size_t>(distance(u, link.sink))];
    });
    std::vector<std::int64_t> total(static_cast<std::size_t>(c.n), 0);
    std::int64_t all = 0;
    for (const auto& h : counts)
        for (std::size_t d = 0; d < h.size(); ++d) {
            total[d] += h[d];
            all += h[d];
        }
    DistributionResult r;
    r.ideal = ideal_length_distribution(c.n);
    r.derived.assign(total.size(), 0.0);
    for (std::size_t d = 1; d < total.size(); ++d) {
        r.derived[d] = all == 0 ? 0.0 : static_cast<double>(total[d]) / static_cast<double>(all);
        r.max_abs_error = std::max(r.max_abs_error, std::abs(r.derived[d] - r.ideal[d]));
    }
    return r;
}

inline void run_distribution(const ExperimentConfig& c, std::ostream& os) {
    const auto r = distribution_study(c);
    os << kDistributionHeader << '\n';
    for (std::size_t d = 1; d < r.ideal.size(); ++d)
        os << "distribution," << c.n << ',' << c.links << ',' << to_string(c.policy) << ',' << d << ','
           << detail::fmt(r.ideal[d]) << ',' << detail::fmt(r.derived[d]) << ','
           << detail::fmt(std::abs(r.derived[d] - r.ideal[d])) << ',' << c.seed << '\n';
}

/// Point-versus-aggregate total-variation distance for t = 0..steps, with
/// trials * messages samples, and the max-drop frequencies for a = 2, 4, 8,
/// 16 over as many aggregate steps. Offsets follow 1/|delta| up to n.
inline void run_chains(const ExperimentConfig& c, std::ostream& os) {
    c.validate();
    const auto dist = BernoulliDelta::inverse_power(c.n);
    const std::int64_t samples = std::int64_t{c.trials} * std::max(1, c.messages);
    os << kChainsHeader << '\n';
    auto rng = make_rng(c.seed, detail::stream_id(c.experiment, 0, 0), 0);
    const auto tv = chain_equivalence_distance(c.n, dist, c.sidedness, c.steps, samples, rng);
    for (std::size_t t = 0; t < tv.size(); ++t)
        os << "chains," << c.n << ',' << to_string(c.sidedness) << ",tv," << t << ',' << detail::fmt(tv[t]) << ",,"
           << c.seed << '\n';
    auto drng = make_rng(c.seed, detail::stream_id(c.experiment, 1, 0), 0);
    for (const auto& m : max_drop_frequencies(c.n, dist, c.sidedness, {2.0, 4.0, 8.0, 16.0}, samples, drng))
        os << "chains," << c.n << ',' << to_string(c.sidedness) << ",max_drop," << detail::fmt_p(m.a) << ','
           << detail::fmt(m.frequency) << ',' << detail::fmt(m.bound) << ',' << c.seed << '\n';
}

/// Lower bound, tree bound, single-link upper bound (n <= 2^14 only; it is
/// quadratic in n) and the simulated mean hops of failure-free inverse-
/// distance overlays, over the n and link grids.
inline void run_bounds(const ExperimentConfig& c, std::ostream& os) {
    c.validate();
    const auto ns = c.n_grid.empty() ? std::vector<NodeId>{c.n} : c.n_grid;
    const auto ls = c.links_grid.empty() ? std::vector<int>{c.links} : c.links_grid;
    os << kBoundsHeader << '\n';
    std::uint64_t param = 0;
    for (NodeId n : ns)
        for (int links : ls) {
            const auto pi = param++;
            const auto lb = mean_lower_bound(inverse_power_lower_bound_inputs(n, links, c.sidedness));
            const double tree = tree_lower_bound(n, links + 2);
            std::string karp;
            if (links == 1 && n <= (1 << 14)) karp = detail::fmt(single_link_karp_bound(n, c.sidedness));
            std::vector<TrialStats> per(static_cast<std::size_t>(c.trials));
            parallel_for(per.size(), c.threads, [&](std::size_t t) {
                auto grng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kGraph), t);
                const OverlayGraph g = build(n, InversePowerLaw{links}, grng);
                auto prng = make_rng(c.seed, detail::stream_id(c.experiment, pi, detail::kPairs), t);
                for (const auto& [s, d] : detail::live_pairs(g, c.messages, prng))
                    per[t].record(route(g, s, d, c.sidedness, Terminate{}, n, prng));
            });
            TrialStats total;
            for (const auto& s : per) total += s;
            os << "bounds," << n << ',' << links << ',' << to_string(c.sidedness) << ',' << detail::fmt(lb.value)
               << ',' << detail::fmt(lb.t_closed) << ',' << detail::fmt(lb.t_gamma_sum) << ',' << detail::fmt(tree)
               << ',' << karp << ',' << detail::fmt(total.mean_hops()) << ',' << c.seed << '\n';
        }
}

inline void run_experiment(const ExperimentConfig& c, std::ostream& os) {
    switch (c.experiment) {
        case Experiment::Failures: return run_failures(c, os);
        case Experiment::Distribution: return run_distribution(c, os);
        case Experiment::Scaling: return run_scaling(c, os);
        case Experiment::Compare: return run_compare(c, os);
        case Experiment::Chains: return run_chains(c, os);
        case Experiment::Bounds: return run_bounds(c, os);
    }
}

inline std::string run_experiment(const ExperimentConfig& c) {
    std::ostringstream os;
    run_experiment(c, os);
    return os.str();
}

}  // namespace swnet

#endif  // SWNET_HARNESS_HPP
