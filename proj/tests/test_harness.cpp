#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "swnet/harness.hpp"

using namespace swnet;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

ExperimentConfig small_failures() {
    ExperimentConfig c;
    c.experiment = Experiment::Failures;
    c.n = 1 << 10;
    c.links = 10;
    c.trials = 6;
    c.messages = 50;
    c.p_grid = {0.0, 0.3, 0.6};
    c.strategies = {StrategyKind::Terminate, StrategyKind::Restart, StrategyKind::Backtrack};
    c.seed = 99;
    return c;
}

}  // namespace

TEST(Harness, RoutingSchema) {
    const auto rows = parse_csv(run_experiment(small_failures()));
    ASSERT_EQ(rows.size(), 1u + 3 * 3);
    EXPECT_EQ(rows[0].size(), 16u);
    EXPECT_EQ(rows[0][0], "experiment");
    EXPECT_EQ(rows[0][15], "seed");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 16u);
        EXPECT_EQ(rows[i][0], "failures");
        EXPECT_EQ(rows[i][1], "1024");
        EXPECT_EQ(rows[i][2], "10");
        EXPECT_EQ(rows[i][15], "99");
        EXPECT_EQ(std::stoll(rows[i][8]) + std::stoll(rows[i][9]), std::stoll(rows[i][7]));
    }
}

TEST(Harness, NoFailuresNoFailedSearches) {
    auto c = small_failures();
    c.p_grid = {0.0};
    for (const auto& row : parse_csv(run_experiment(c))) {
        if (row[0] != "failures") continue;
        EXPECT_EQ(row[9], "0") << row[5];
        EXPECT_EQ(row[7], "300");
    }
}

TEST(Harness, BacktrackingBeatsTerminate) {
    auto c = small_failures();
    c.n = 1 << 12;
    c.links = 12;
    c.p_grid = {0.2, 0.5, 0.8};
    c.trials = 10;
    c.messages = 100;
    const auto rows = parse_csv(run_experiment(c));
    for (std::size_t i = 1; i + 2 < rows.size(); i += 3) {
        ASSERT_EQ(rows[i][5], "terminate");
        ASSERT_EQ(rows[i + 2][5], "backtrack");
        EXPECT_LT(std::stoll(rows[i + 2][9]), std::stoll(rows[i][9])) << "p=" << rows[i][4];
    }
}

TEST(Harness, ThreadCountDoesNotChangeOutput) {
    auto c = small_failures();
    c.threads = 1;
    const auto one = run_experiment(c);
    c.threads = 4;
    EXPECT_EQ(run_experiment(c), one);
    c.threads = 3;
    c.experiment = Experiment::Scaling;
    c.n_grid = {256, 1024};
    c.links_grid = {1, 4};
    const auto scaling = run_experiment(c);
    c.threads = 1;
    EXPECT_EQ(run_experiment(c), scaling);
    c.seed = 100;
    EXPECT_NE(run_experiment(c), scaling);
}

TEST(Harness, DistributionColumnsNormalized) {
    ExperimentConfig c;
    c.experiment = Experiment::Distribution;
    c.n = 512;
    c.links = 9;
    c.trials = 3;
    const auto rows = parse_csv(run_experiment(c));
    ASSERT_EQ(rows.size(), 512u);  // header plus distances 1..511
    EXPECT_EQ(rows[0].size(), 9u);
    const auto study = distribution_study(c);
    double ideal = 0.0, derived = 0.0;
    for (std::size_t d = 1; d < study.ideal.size(); ++d) {
        ideal += study.ideal[d];
        derived += study.derived[d];
    }
    EXPECT_NEAR(ideal, 1.0, 1e-9);
    EXPECT_NEAR(derived, 1.0, 1e-9);
}

TEST(Harness, CompareRowsAndZeroFailureCase) {
    ExperimentConfig c;
    c.experiment = Experiment::Compare;
    c.n = 1 << 10;
    c.links = 10;
    c.trials = 3;
    c.messages = 100;
    c.p_grid = {0.0, 0.3};
    const auto text = run_experiment(c);
    EXPECT_EQ(run_experiment(c), text);
    const auto rows = parse_csv(text);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[1][0], "compare-ideal");
    EXPECT_EQ(rows[2][0], "compare-heuristic");
    EXPECT_EQ(rows[1][9], "0");
    EXPECT_EQ(rows[2][9], "0");
}

TEST(Harness, ChainsRows) {
    ExperimentConfig c;
    c.experiment = Experiment::Chains;
    c.n = 16;
    c.trials = 100;
    c.messages = 160;
    c.steps = 4;
    const auto rows = parse_csv(run_experiment(c));
    ASSERT_EQ(rows.size(), 1u + 5 + 4);
    EXPECT_EQ(rows[1][3], "tv");
    EXPECT_EQ(rows[1][5], "0.000000");
    EXPECT_EQ(rows[6][3], "max_drop");
}

TEST(Harness, BoundsRows) {
    ExperimentConfig c;
    c.experiment = Experiment::Bounds;
    c.n = 1 << 10;
    c.links = 1;
    c.links_grid = {1, 4};
    c.trials = 5;
    c.messages = 50;
    c.sidedness = Sidedness::OneSided;
    const auto rows = parse_csv(run_experiment(c));
    ASSERT_EQ(rows.size(), 3u);
    ASSERT_EQ(rows[1].size(), 11u);
    const double lower = std::stod(rows[1][4]), karp = std::stod(rows[1][8]), mean = std::stod(rows[1][9]);
    EXPECT_LE(lower, mean);
    EXPECT_LE(mean, karp);
    EXPECT_EQ(rows[2][8], "");  // upper bound only for one link
}

TEST(Harness, DeterministicDistributionUsesDigitRouting) {
    ExperimentConfig c;
    c.experiment = Experiment::Scaling;
    c.dist = DistKind::DetBase;
    c.n = 1 << 10;
    c.trials = 2;
    c.messages = 100;
    const auto rows = parse_csv(run_experiment(c));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][5], "deterministic");
    EXPECT_LE(std::stod(rows[1][11]), 10.0);
}

TEST(Harness, RejectsBadConfig) {
    auto c = small_failures();
    c.p_grid = {1.5};
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small_failures();
    c.trials = 0;
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small_failures();
    c.strategies.clear();
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(Harness, TotalFailureSkipsTrials) {
    auto c = small_failures();
    c.p_grid = {1.0};
    const auto rows = parse_csv(run_experiment(c));
    EXPECT_EQ(rows[1][6], "0");
    EXPECT_EQ(rows[1][7], "0");
}

TEST(Harness, ParallelForRunsEachIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}
