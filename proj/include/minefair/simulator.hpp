#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minefair/fairness.hpp"
#include "minefair/scenario.hpp"

namespace minefair {

// Monte Carlo round simulation. Child seed 0 of `seed` realizes the delay
// matrix, child seed 1 drives the round sampling, so a single seed pins the
// whole run. `race_mode` resolves FirstSeen forks by replaying the
// propagation race (fork time + third-party adoption + next generator)
// instead of a Bernoulli draw on W.
struct SimConfig {
    Scenario scenario;
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    bool race_mode = false;
};

struct SimResult {
    std::uint64_t rounds = 0;
    std::uint64_t fork_events = 0;
    std::uint64_t total_main_chain_blocks = 0;
    std::vector<std::uint64_t> main_chain_blocks; // per miner
    std::vector<std::uint64_t> round_initiations; // per miner
    std::vector<double> empirical_r;
    std::vector<double> empirical_pi;
    std::vector<double> r_std_error;  // binomial, sqrt(r (1-r) / rounds)
    std::vector<double> pi_std_error;
    std::string scenario_fingerprint;
};

// Generative counterpart of the fixed-point engine: per round, sample the
// next generator by hashrate, fork with probability F, resolve the fork via
// W (or the race in race_mode), credit exactly one main-chain block, then
// draw the next round's initiator. Deterministic given the config.
SimResult simulate(const SimConfig& config);

// Empirical reward shares -> MP/MPR, same derivations as the engine report.
FairnessReport empirical_report(const SimResult& result, const std::vector<double>& alpha);

} // namespace minefair
