#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "minefair/matrix.hpp"
#include "minefair/scenario.hpp"

namespace minefair {

enum class GroupStrategy { Slow, Fast };

const char* to_string(GroupStrategy s);

// Two-group split: the minimal prefix of miners, sorted by hashrate
// descending (index ascending on ties), whose cumulative share reaches 0.5
// forms the large group; everyone else is small.
struct GroupPartition {
    std::vector<int> group_of;         // 0 = large, 1 = small
    std::vector<std::size_t> large;    // member indices, ascending
    std::vector<std::size_t> small;
    double large_share = 0.0;
    double small_share = 0.0;
};

// How a group's utility aggregates its members' outcomes. Group-level MPR
// (sum MP over sum alpha) is the default; the alternatives are selectable
// because the aggregation is a modeling choice, not a theorem.
enum class GroupUtilityKind { GroupMpr, SumMp, SumMpr };

struct GameCell {
    GroupStrategy large_strategy = GroupStrategy::Slow;
    GroupStrategy small_strategy = GroupStrategy::Slow;
    double utility_large = 0.0;
    double utility_small = 0.0;
    bool equilibrium = false;
};

struct GameOutcome {
    // Row-major over (large_strategy, small_strategy), Slow before Fast.
    std::array<GameCell, 4> cells;
    double fast_delay_s = 0.0;
    double slow_delay_s = 0.0;

    const GameCell& cell(GroupStrategy large, GroupStrategy small) const;
    std::vector<const GameCell*> equilibria() const;
};

GroupPartition partition_groups(const std::vector<double>& alpha);

// T_ij = fast_d when i and j share a group that plays Fast, slow_d otherwise
// (inter-group pairs are always slow: cross-group acceleration needs both
// sides' agreement, which a zero-sum split never produces). Zero diagonal.
Matrix group_delay_matrix(const GroupPartition& partition, GroupStrategy large,
                          GroupStrategy small, double fast_delay_s, double slow_delay_s);

// Evaluates the exact engine at all four strategy profiles and marks every
// cell from which neither group gains by a unilateral switch.
GameOutcome solve_game(const Scenario& scenario, const GroupPartition& partition,
                       double fast_delay_s = 3.0, double slow_delay_s = 6.0,
                       GroupUtilityKind utility = GroupUtilityKind::GroupMpr);

} // namespace minefair
