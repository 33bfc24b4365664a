#pragma once

#include <cstdint>
#include <vector>

#include "minefair/scenario.hpp"

namespace minefair {

// Ensemble over delay realizations: each draw realizes a fresh delay matrix
// (child seed = draw index under master_seed) and evaluates the full
// fixed-point engine on it. A deterministic delay model is allowed as the
// degenerate zero-variance case.
struct EnsembleConfig {
    Scenario scenario;
    std::size_t n_draws = 0;
    std::uint64_t master_seed = 0;
};

struct EnsembleStats {
    std::size_t n_draws = 0;
    std::vector<double> mpr_mean;
    std::vector<double> mpr_std; // sample std, n-1 denominator
    // Same scenario under a fixed uniform delay equal to the random model's
    // mean (the model itself when it is already deterministic).
    std::vector<double> mpr_fixed_reference;
};

// Draws run independently (parallelized when cores allow); the mean/std
// reduction is sequential in draw order, so results are deterministic.
EnsembleStats run_ensemble(const EnsembleConfig& config);

// Spearman rank correlation between hashrate and per-miner MPR standard
// deviation. Ties get average ranks; an all-tied input (zero rank variance)
// returns 0. Requires at least 10 miners.
double std_vs_hashrate_trend(const EnsembleStats& stats, const std::vector<double>& alpha);

// Exposed for tests: average-rank Spearman correlation of two equal-length
// vectors, 0 when either side has zero rank variance.
double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y);

} // namespace minefair
