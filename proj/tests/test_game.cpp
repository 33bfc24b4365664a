#include <doctest.h>

#include <cmath>
#include <vector>

#include "minefair/game.hpp"
#include "minefair/scenario.hpp"

using namespace minefair;

namespace {

Scenario pool_scenario(std::size_t n, TieBreakRule rule = TieBreakRule::FirstSeen) {
    PoolDistributionSpec spec;
    spec.named_shares = {{"a", 0.293}, {"b", 0.247}, {"c", 0.131}, {"d", 0.097}, {"e", 0.041}};
    spec.fill_to = n;
    Scenario s;
    s.n_miners = n;
    s.hashrates = expand_pool_distribution(spec);
    s.block_interval_s = 600.0;
    s.delays = DelayModel::fixed_uniform(6.0);
    s.tie_break = rule;
    s.validate_and_normalize();
    return s;
}

} // namespace

TEST_SUITE_BEGIN("game");

TEST_CASE("partition takes the minimal top-share prefix") {
    SUBCASE("fifty-fifty boundary goes to the lower index") {
        const GroupPartition p = partition_groups({0.5, 0.5});
        CHECK(p.large == std::vector<std::size_t>{0});
        CHECK(p.small == std::vector<std::size_t>{1});
    }
    SUBCASE("prefix stops once 0.5 is reached") {
        const GroupPartition p = partition_groups({0.4, 0.3, 0.2, 0.1});
        CHECK(p.large == std::vector<std::size_t>{0, 1});
        CHECK(p.large_share == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("order is by share, not by index") {
        const GroupPartition p = partition_groups({0.1, 0.45, 0.2, 0.25});
        CHECK(p.large == std::vector<std::size_t>{1, 3});
    }
}

TEST_CASE("group delay matrix per profile") {
    const GroupPartition p = partition_groups({0.4, 0.3, 0.2, 0.1});
    SUBCASE("fast/fast: intra 3, inter 6") {
        const Matrix m =
            group_delay_matrix(p, GroupStrategy::Fast, GroupStrategy::Fast, 3.0, 6.0);
        CHECK(m(0, 1) == 3.0);
        CHECK(m(2, 3) == 3.0);
        CHECK(m(0, 2) == 6.0);
        CHECK(m(3, 1) == 6.0);
        CHECK(m(1, 1) == 0.0);
    }
    SUBCASE("slow/slow: uniform 6") {
        const Matrix m =
            group_delay_matrix(p, GroupStrategy::Slow, GroupStrategy::Slow, 3.0, 6.0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(m(i, j) == (i == j ? 0.0 : 6.0));
    }
    SUBCASE("fast/slow: only large-large accelerates") {
        const Matrix m =
            group_delay_matrix(p, GroupStrategy::Fast, GroupStrategy::Slow, 3.0, 6.0);
        CHECK(m(0, 1) == 3.0);
        CHECK(m(1, 0) == 3.0);
        CHECK(m(2, 3) == 6.0);
        CHECK(m(0, 2) == 6.0);
    }
}

TEST_CASE("zero delays make every profile a zero-utility equilibrium") {
    const Scenario s = pool_scenario(40);
    const GroupPartition p = partition_groups(s.hashrates);
    const GameOutcome outcome = solve_game(s, p, 0.0, 0.0);
    for (const GameCell& c : outcome.cells) {
        CHECK(std::abs(c.utility_large) <= 1e-12);
        CHECK(std::abs(c.utility_small) <= 1e-12);
        CHECK(c.equilibrium);
    }
}

TEST_CASE("zero-sum: group profits cancel at every profile") {
    const Scenario s = pool_scenario(60);
    const GroupPartition p = partition_groups(s.hashrates);
    const GameOutcome outcome = solve_game(s, p, 3.0, 6.0);
    for (const GameCell& c : outcome.cells) {
        const double total =
            c.utility_large * p.large_share + c.utility_small * p.small_share;
        CHECK(std::abs(total) <= 1e-10);
    }
}

TEST_CASE("accelerating your own group never hurts it") {
    const Scenario s = pool_scenario(60);
    const GroupPartition p = partition_groups(s.hashrates);
    const GameOutcome outcome = solve_game(s, p, 3.0, 6.0);
    for (GroupStrategy other : {GroupStrategy::Slow, GroupStrategy::Fast}) {
        CHECK(outcome.cell(GroupStrategy::Fast, other).utility_large >=
              outcome.cell(GroupStrategy::Slow, other).utility_large);
        CHECK(outcome.cell(other, GroupStrategy::Fast).utility_small >=
              outcome.cell(other, GroupStrategy::Slow).utility_small);
    }
}

TEST_CASE("fast/fast is the unique equilibrium and keeps the large group ahead") {
    const Scenario s = pool_scenario(60);
    const GroupPartition p = partition_groups(s.hashrates);
    const GameOutcome outcome = solve_game(s, p, 3.0, 6.0);
    const auto eq = outcome.equilibria();
    REQUIRE(eq.size() == 1);
    CHECK(eq[0]->large_strategy == GroupStrategy::Fast);
    CHECK(eq[0]->small_strategy == GroupStrategy::Fast);
    CHECK(eq[0]->utility_large > eq[0]->utility_small);
}

TEST_CASE("utility aggregation switch") {
    const Scenario s = pool_scenario(30);
    const GroupPartition p = partition_groups(s.hashrates);
    const GameOutcome mp = solve_game(s, p, 3.0, 6.0, GroupUtilityKind::SumMp);
    // with sum-of-MP utilities the game is exactly zero-sum cell by cell
    for (const GameCell& c : mp.cells)
        CHECK(c.utility_large == doctest::Approx(-c.utility_small).epsilon(1e-10));

    const GameOutcome mpr = solve_game(s, p, 3.0, 6.0, GroupUtilityKind::GroupMpr);
    const GameCell& cell = mpr.cell(GroupStrategy::Fast, GroupStrategy::Fast);
    const GameCell& raw = mp.cell(GroupStrategy::Fast, GroupStrategy::Fast);
    CHECK(cell.utility_large == doctest::Approx(raw.utility_large / p.large_share).epsilon(1e-12));
}

TEST_CASE("a dominant miner forms the large group alone") {
    const GroupPartition p = partition_groups({0.9, 0.06, 0.04});
    CHECK(p.large == std::vector<std::size_t>{0});
    CHECK(p.small == std::vector<std::size_t>{1, 2});
}

TEST_CASE("bundled distribution: top two pools form the large group") {
    // frozen from running the partition on scenarios/bitcoin-2024.scenario:
    // 0.293 + 0.247 = 0.540 is the first prefix to reach half the hashrate
    const Scenario s = load_scenario(std::string(MINEFAIR_SCENARIO_DIR) + "/bitcoin-2024.scenario");
    const GroupPartition p = partition_groups(s.hashrates);
    CHECK(p.large == std::vector<std::size_t>{0, 1});
    CHECK(p.large_share == doctest::Approx(0.54).epsilon(1e-12));
}

TEST_SUITE_END();
