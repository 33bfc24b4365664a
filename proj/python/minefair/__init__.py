"""Round-based mining fairness analysis engine."""

from minefair._core import (  # noqa: F401
    ConvergenceError,
    DelayModel,
    EnsembleStats,
    FairnessReport,
    GameCell,
    GameOutcome,
    GroupPartition,
    GroupStrategy,
    GroupUtilityKind,
    LinearFit,
    RoundInitiation,
    ScenarioError,
    Scenario,
    SimResult,
    TheoryPrediction,
    TieBreakRule,
    __version__,
    derive_child_seed,
    empirical_report,
    expand_pool_distribution,
    fairness_report,
    fit_mpr_line,
    fork_matrix,
    group_delay_matrix,
    load_scenario,
    naive_mpr,
    parse_scenario,
    partition_groups,
    predict_mpr,
    predict_round_initiation,
    realize_delays,
    reward_shares,
    run_ensemble,
    scenario_fingerprint,
    simulate,
    solve_game,
    spearman_rank_correlation,
    stationary_round_initiation,
    std_vs_hashrate_trend,
    sum_squared,
    win_matrix,
    zero_point_identity_check,
)
