// swnet: build overlays, route single messages, run batch experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swnet/swnet.hpp"

namespace {

using namespace swnet;

const std::map<std::string, DistKind> kDists{
    {"power1", DistKind::Power1}, {"detbase", DistKind::DetBase}, {"powers", DistKind::Powers}, {"bernoulli", DistKind::Bernoulli}};
const std::map<std::string, StrategyKind> kStrategies{
    {"terminate", StrategyKind::Terminate}, {"restart", StrategyKind::Restart}, {"backtrack", StrategyKind::Backtrack}};
const std::map<std::string, Experiment> kExperiments{
    {"failures", Experiment::Failures}, {"distribution", Experiment::Distribution}, {"scaling", Experiment::Scaling},
    {"compare", Experiment::Compare},   {"chains", Experiment::Chains},             {"bounds", Experiment::Bounds}};
const std::map<std::string, FailureKind> kFailures{
    {"node", FailureKind::Node}, {"link", FailureKind::Link}, {"presence", FailureKind::Presence}};
const std::map<std::string, Sidedness> kSides{{"one", Sidedness::OneSided}, {"two", Sidedness::TwoSided}};
const std::map<std::string, ReplacementPolicy> kPolicies{
    {"inverse", ReplacementPolicy::InverseDistance}, {"oldest", ReplacementPolicy::Oldest}};

struct Options {
    ExperimentConfig config;
    std::string dist = "power1";
    std::vector<std::string> strategies{"terminate"};
    std::string experiment = "failures";
    std::string failure = "node";
    std::string side = "two";
    std::string policy = "inverse";
    std::string out;
    NodeId src = 0;
    NodeId dst = 1;
    double p = 0.0;
};

void add_graph_flags(CLI::App* app, Options& o) {
    app->add_option("--n", o.config.n, "number of line positions")->check(CLI::Range(2, 1 << 30));
    app->add_option("--links", o.config.links, "long links per node")->check(CLI::PositiveNumber);
    app->add_option("--base", o.config.base, "base for detbase/powers")->check(CLI::Range(2, 1 << 20));
    app->add_option("--dist", o.dist, "link distribution")->check(CLI::IsMember(kDists));
    app->add_option("--seed", o.config.seed, "master seed");
}

void add_routing_flags(CLI::App* app, Options& o) {
    app->add_option("--history", o.config.history, "backtrack history")->check(CLI::PositiveNumber);
    app->add_option("--max-restarts", o.config.max_restarts, "random restart cap")->check(CLI::NonNegativeNumber);
    app->add_option("--max-hops", o.config.max_hops, "hop cap, 0 for 4 (log2 n)^2")->check(CLI::NonNegativeNumber);
    app->add_option("--sided", o.side, "one or two")->check(CLI::IsMember(kSides));
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    return &file;
}

void finish_out(const std::string& path, std::ostream& os) {
    os.flush();
    if (!os) throw std::runtime_error("write failed" + (path.empty() ? std::string{} : " for " + path));
}

void resolve(Options& o) {
    o.config.dist = kDists.at(o.dist);
    o.config.experiment = kExperiments.at(o.experiment);
    o.config.failure = kFailures.at(o.failure);
    o.config.sidedness = kSides.at(o.side);
    o.config.policy = kPolicies.at(o.policy);
    o.config.strategies.clear();
    for (const auto& s : o.strategies) {
        if (s == "all") {
            o.config.strategies = {StrategyKind::Terminate, StrategyKind::Restart, StrategyKind::Backtrack};
            break;
        }
        o.config.strategies.push_back(kStrategies.at(s));
    }
}

int cmd_build(const Options& o) {
    auto rng = make_rng(o.config.seed);
    const auto g = build(o.config.n, detail::make_distribution(o.config, o.config.n, o.config.links), rng);
    std::ofstream file;
    std::ostream* os = open_out(o.out, file);
    write_text(*os, g);
    finish_out(o.out, *os);
    return 0;
}

int cmd_route(const Options& o) {
    const auto& c = o.config;
    auto rng = make_rng(c.seed);
    auto g = build(c.n, detail::make_distribution(c, c.n, c.links), rng);
    g = apply_node_failures(std::move(g), o.p, rng);
    const int cap = detail::hop_cap(c, c.n);
    RouteResult r;
    if (detail::deterministic_dist(c))
        r = route_deterministic(g, o.src, o.dst, cap, true);
    else
        r = route(g, o.src, o.dst, c.sidedness, detail::make_strategy(c, c.strategies.front()), cap, rng, true);
    std::ofstream file;
    std::ostream* os = open_out(o.out, file);
    *os << "status " << (r.delivered() ? "delivered" : "failed") << "\nhops " << r.hops << "\nbacktracks "
        << r.backtracks << "\nrestarts " << r.restarts << "\ncapped " << (r.capped ? 1 : 0) << "\npath";
    for (NodeId v : r.path) *os << ' ' << v;
    *os << '\n';
    finish_out(o.out, *os);
    return r.delivered() ? 0 : 3;
}

int cmd_experiment(const Options& o) {
    std::ofstream file;
    std::ostream* os = open_out(o.out, file);
    run_experiment(o.config, *os);
    finish_out(o.out, *os);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line-embedded small-world overlays: construction, routing and experiments"};
    app.require_subcommand(1);
    Options o;

    auto* build_cmd = app.add_subcommand("build", "build an overlay and dump it as text");
    add_graph_flags(build_cmd, o);
    build_cmd->add_option("--out", o.out, "output file (default stdout)");

    auto* route_cmd = app.add_subcommand("route", "route one message and print the path");
    add_graph_flags(route_cmd, o);
    add_routing_flags(route_cmd, o);
    route_cmd->add_option("--src", o.src, "source position")->required();
    route_cmd->add_option("--dst", o.dst, "target position")->required();
    route_cmd->add_option("--p", o.p, "node failure probability")->check(CLI::Range(0.0, 1.0));
    route_cmd->add_option("--strategy", o.strategies, "terminate, restart or backtrack")
        ->check(CLI::IsMember(kStrategies))
        ->expected(1);
    route_cmd->add_option("--out", o.out, "output file (default stdout)");

    auto* exp_cmd = app.add_subcommand("experiment", "run a batch experiment and write CSV");
    exp_cmd->add_option("kind", o.experiment, "failures, distribution, scaling, compare, chains or bounds")
        ->required()
        ->check(CLI::IsMember(kExperiments));
    add_graph_flags(exp_cmd, o);
    add_routing_flags(exp_cmd, o);
    exp_cmd->add_option("--p-grid", o.config.p_grid, "comma-separated probabilities")->delimiter(',');
    exp_cmd->add_option("--failure", o.failure, "node (p fails), link or presence (p present)")
        ->check(CLI::IsMember(kFailures));
    exp_cmd->add_option("--strategy", o.strategies, "comma-separated strategies, or all")
        ->delimiter(',')
        ->check(CLI::IsMember(kStrategies) | CLI::IsMember({"all"}));
    exp_cmd->add_option("--policy", o.policy, "join replacement policy: inverse or oldest")
        ->check(CLI::IsMember(kPolicies));
    exp_cmd->add_option("--trials", o.config.trials, "graphs per configuration")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--messages", o.config.messages, "messages per graph")->check(CLI::NonNegativeNumber);
    exp_cmd->add_option("--steps", o.config.steps, "chain steps (chains)")->check(CLI::NonNegativeNumber);
    exp_cmd->add_option("--n-grid", o.config.n_grid, "comma-separated n values (scaling, bounds)")->delimiter(',');
    exp_cmd->add_option("--links-grid", o.config.links_grid, "comma-separated link counts (scaling, bounds)")
        ->delimiter(',');
    exp_cmd->add_option("--threads", o.config.threads, "worker threads, 0 for all cores");
    exp_cmd->add_option("--out", o.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        resolve(o);
        o.config.validate();
        if (*build_cmd) return cmd_build(o);
        if (*route_cmd) return cmd_route(o);
        return cmd_experiment(o);
    } catch (const std::exception& e) {
        std::cerr << "swnet: " << e.what() << '\n';
        return 2;
    }
}
