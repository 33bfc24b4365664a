#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minefair/matrix.hpp"
#include "minefair/scenario.hpp"

namespace minefair {

// Stationary distribution of the round-initiation chain plus the iteration
// diagnostics the convergence contract asserts on.
struct RoundInitiation {
    std::vector<double> pi;
    std::size_t iterations = 0;
    double final_delta = 0.0;
};

// Per-miner results of the exact (non-approximated) model evaluation.
// Invariants: sum(reward_share) == 1 and sum(mp) == 0 within 1e-10,
// mp = reward_share - alpha, mpr = mp / alpha.
struct FairnessReport {
    std::vector<double> alpha;
    std::vector<double> pi;
    std::vector<double> reward_share;
    std::vector<double> mp;
    std::vector<double> mpr;
    std::string scenario_fingerprint;
};

inline constexpr double kStationaryTolerance = 1e-13;       // L-inf delta
inline constexpr std::size_t kStationaryMaxIterations = 1000000;

// Fork probabilities F_ij = 1 - exp(-T_ij / T), zero diagonal: the chance
// that the next block lands within the propagation window of the round
// starter's block.
Matrix fork_matrix(const Matrix& delays_s, double block_interval_s);

// Win probabilities for fork races under uniform delays. Exact per rule:
// FirstSeen  W_ij = 1 - alpha_j, Random W_ij = (1 - alpha_j + alpha_i) / 2,
// LastGenerated W_ij = alpha_i.
Matrix win_matrix_closed_form(const std::vector<double>& alpha, TieBreakRule rule);

// One-round race for arbitrary delay matrices: miner i started the round at
// time 0, j forked at time tau with tau drawn from the exponential
// inter-block density truncated to (0, T_ij). A third party k sees i's block
// at T_ik and j's at tau + T_jk and mines on whichever arrived first
// (FirstSeen); under Random third parties split half/half; under
// LastGenerated they all take the newer block. Both fork participants stay
// on their own block under every rule. Degenerates to the closed forms when
// all off-diagonal delays are equal.
Matrix win_matrix_one_round_race(const std::vector<double>& alpha, const Matrix& delays_s,
                                 double block_interval_s, TieBreakRule rule);

// Dispatch: uniform off-diagonal delays (or rules whose race result does not
// depend on delays) use the closed forms, everything else the one-round race.
Matrix win_matrix(const Scenario& scenario, const Matrix& delays_s);

// Fixed point of the round-initiation recurrence
//   pi'(i) = sum_j [alpha_i (1 - F_ji) + alpha_i sum_k alpha_k F_jk] pi(j),
// iterated from pi = alpha until the L-inf change drops below 1e-13, cap
// 1e6 iterations (the chain contracts for fork rates < 1, so the cap only
// triggers on pathological input and then throws ConvergenceError).
// Summation order is ascending j; the result is renormalized each sweep.
RoundInitiation stationary_round_initiation(const std::vector<double>& alpha, const Matrix& fork);

// Long-run main-chain reward shares:
//   r_i = pi_i (1 - sum_j alpha_j F_ij (1 - W_ij))
//       + alpha_i sum_j pi_j F_ji (1 - W_ji).
// The cross terms cancel under an index swap, so sum(r) == 1 identically.
std::vector<double> reward_shares(const std::vector<double>& alpha, const std::vector<double>& pi,
                                  const Matrix& fork, const Matrix& win);

// Full pipeline: realize delays -> F -> W -> stationary pi -> r -> MP, MPR.
// `seed_override` replaces the delay model's own seed when set; deterministic
// delay models ignore seeds entirely.
FairnessReport fairness_report(const Scenario& scenario,
                               std::optional<std::uint64_t> seed_override = std::nullopt);

} // namespace minefair
