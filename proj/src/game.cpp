#include "minefair/game.hpp"

#include <algorithm>
#include <numeric>

#include "minefair/fairness.hpp"

namespace minefair {

const char* to_string(GroupStrategy s) {
    return s == GroupStrategy::Fast ? "fast" : "slow";
}

GroupPartition partition_groups(const std::vector<double>& alpha) {
    const std::size_t n = alpha.size();
    if (n < 2) throw ScenarioError("partition_groups needs at least 2 miners");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Hashrate descending; stable sort keeps index order as the tie-break.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return alpha[a] > alpha[b]; });

    GroupPartition partition;
    partition.group_of.assign(n, 1);
    double cumulative = 0.0;
    std::size_t taken = 0;
    while (taken < n && cumulative < 0.5) {
        cumulative += alpha[order[taken]];
        partition.group_of[order[taken]] = 0;
        ++taken;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (partition.group_of[i] == 0) {
            partition.large.push_back(i);
            partition.large_share += alpha[i];
        } else {
            partition.small.push_back(i);
            partition.small_share += alpha[i];
        }
    }
    return partition;
}

Matrix group_delay_matrix(const GroupPartition& partition, GroupStrategy large,
                          GroupStrategy small, double fast_delay_s, double slow_delay_s) {
    const std::size_t n = partition.group_of.size();
    Matrix delays(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const int gi = partition.group_of[i];
            if (gi == partition.group_of[j]) {
                const GroupStrategy strategy = (gi == 0) ? large : small;
                delays(i, j) = (strategy == GroupStrategy::Fast) ? fast_delay_s : slow_delay_s;
            } else {
                delays(i, j) = slow_delay_s;
            }
        }
    }
    return delays;
}

const GameCell& GameOutcome::cell(GroupStrategy large, GroupStrategy small) const {
    const std::size_t row = (large == GroupStrategy::Fast) ? 1 : 0;
    const std::size_t col = (small == GroupStrategy::Fast) ? 1 : 0;
    return cells[row * 2 + col];
}

std::vector<const GameCell*> GameOutcome::equilibria() const {
    std::vector<const GameCell*> out;
    for (const GameCell& c : cells)
        if (c.equilibrium) out.push_back(&c);
    return out;
}

namespace {

double group_utility(const FairnessReport& report, const std::vector<std::size_t>& members,
                     double share, GroupUtilityKind kind) {
    double mp = 0.0, mpr = 0.0;
    for (std::size_t i : members) {
        mp += report.mp[i];
        mpr += report.mpr[i];
    }
    switch (kind) {
        case GroupUtilityKind::GroupMpr: return mp / share;
        case GroupUtilityKind::SumMp: return mp;
        case GroupUtilityKind::SumMpr: return mpr;
    }
    return mp / share;
}

} // namespace

GameOutcome solve_game(const Scenario& scenario, const GroupPartition& partition,
                       double fast_delay_s, double slow_delay_s, GroupUtilityKind utility) {
    if (partition.group_of.size() != scenario.n_miners)
        throw ScenarioError("partition does not match the scenario's miner count");
    if (fast_delay_s < 0.0 || slow_delay_s < 0.0)
        throw ScenarioError("game delays must be >= 0");

    GameOutcome outcome;
    outcome.fast_delay_s = fast_delay_s;
    outcome.slow_delay_s = slow_delay_s;

    const GroupStrategy order[2] = {GroupStrategy::Slow, GroupStrategy::Fast};
    Matrix group_pair(2, slow_delay_s);
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t col = 0; col < 2; ++col) {
            group_pair(0, 0) = (order[row] == GroupStrategy::Fast) ? fast_delay_s : slow_delay_s;
            group_pair(1, 1) = (order[col] == GroupStrategy::Fast) ? fast_delay_s : slow_delay_s;
            group_pair(0, 1) = slow_delay_s;
            group_pair(1, 0) = slow_delay_s;

            Scenario profile = scenario;
            profile.delays = DelayModel::grouped_fixed(partition.group_of, group_pair);
            const FairnessReport report = fairness_report(profile);

            GameCell& cell = outcome.cells[row * 2 + col];
            cell.large_strategy = order[row];
            cell.small_strategy = order[col];
            cell.utility_large =
                group_utility(report, partition.large, partition.large_share, utility);
            cell.utility_small =
                group_utility(report, partition.small, partition.small_share, utility);
        }
    }

    // Pure Nash: no unilateral profitable deviation.
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t col = 0; col < 2; ++col) {
            GameCell& cell = outcome.cells[row * 2 + col];
            const GameCell& other_large = outcome.cells[(1 - row) * 2 + col];
            const GameCell& other_small = outcome.cells[row * 2 + (1 - col)];
            cell.equilibrium = cell.utility_large >= other_large.utility_large &&
                               cell.utility_small >= other_small.utility_small;
        }
    }
    return outcome;
}

} // namespace minefair
