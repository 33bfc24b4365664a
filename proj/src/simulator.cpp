#include "minefair/simulator.hpp"

#include <cmath>
#include <limits>

#include "minefair/rng.hpp"

namespace minefair {

SimResult simulate(const SimConfig& config) {
    if (config.rounds < 1) throw ScenarioError("rounds must be >= 1");
    Scenario scenario = config.scenario;
    scenario.validate_and_normalize();

    const std::size_t n = scenario.n_miners;
    const std::vector<double>& alpha = scenario.hashrates;
    const double T = scenario.block_interval_s;

    const Matrix delays = realize_delays(scenario.delays, n, derive_child_seed(config.seed, 0));
    const Matrix fork = fork_matrix(delays, T);
    const Matrix win = win_matrix(scenario, delays);
    const std::vector<double> cdf = cumulative_sums(alpha);
    const bool race = config.race_mode && scenario.tie_break == TieBreakRule::FirstSeen;

    Rng rng(derive_child_seed(config.seed, 1));

    SimResult result;
    result.rounds = config.rounds;
    result.main_chain_blocks.assign(n, 0);
    result.round_initiations.assign(n, 0);
    result.scenario_fingerprint = scenario_fingerprint(scenario);

    // Draw order per round: next generator, fork uniform, then either the
    // Bernoulli winner + fresh initiator, or in race mode the fork time and
    // the next generator (whose branch choice settles the fork).
    std::size_t initiator = rng.categorical(cdf);
    for (std::uint64_t r = 0; r < config.rounds; ++r) {
        result.round_initiations[initiator]++;
        const std::size_t generator = rng.categorical(cdf);
        std::size_t credited = initiator;
        std::size_t next_initiator = generator;

        if (generator != initiator && rng.bernoulli(fork(initiator, generator))) {
            result.fork_events++;
            if (race) {
                // Replay the race: fork happened at time tau (exponential
                // truncated to the propagation window), and the next block's
                // generator extends whichever branch reached it first.
                const double window = delays(initiator, generator);
                const double u = rng.uniform01();
                const double tau = -T * std::log1p(-u * (1.0 - std::exp(-window / T)));
                const std::size_t m = rng.categorical(cdf);
                bool on_initiator_branch;
                if (m == initiator) {
                    on_initiator_branch = true;
                } else if (m == generator) {
                    on_initiator_branch = false;
                } else {
                    on_initiator_branch = delays(initiator, m) < tau + delays(generator, m);
                }
                credited = on_initiator_branch ? initiator : generator;
                next_initiator = m;
            } else {
                const bool initiator_wins = rng.bernoulli(win(initiator, generator));
                credited = initiator_wins ? initiator : generator;
                next_initiator = rng.categorical(cdf);
            }
        }

        result.main_chain_blocks[credited]++;
        initiator = next_initiator;
    }

    result.total_main_chain_blocks = config.rounds;
    const double rounds = static_cast<double>(config.rounds);
    result.empirical_r.resize(n);
    result.empirical_pi.resize(n);
    result.r_std_error.resize(n);
    result.pi_std_error.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r_hat = static_cast<double>(result.main_chain_blocks[i]) / rounds;
        const double pi_hat = static_cast<double>(result.round_initiations[i]) / rounds;
        result.empirical_r[i] = r_hat;
        result.empirical_pi[i] = pi_hat;
        result.r_std_error[i] = std::sqrt(r_hat * (1.0 - r_hat) / rounds);
        result.pi_std_error[i] = std::sqrt(pi_hat * (1.0 - pi_hat) / rounds);
    }
    return result;
}

FairnessReport empirical_report(const SimResult& result, const std::vector<double>& alpha) {
    if (result.total_main_chain_blocks == 0)
        throw ScenarioError("empirical report needs at least one main-chain block");
    if (result.main_chain_blocks.size() != alpha.size())
        throw ScenarioError("simulation size does not match hashrate vector length");

    FairnessReport report;
    report.alpha = alpha;
    report.scenario_fingerprint = result.scenario_fingerprint;
    if (result.round_initiations.size() == alpha.size() && result.rounds > 0) {
        report.pi.resize(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i)
            report.pi[i] = static_cast<double>(result.round_initiations[i]) /
                           static_cast<double>(result.rounds);
    } else {
        report.pi.assign(alpha.size(), std::numeric_limits<double>::quiet_NaN());
    }
    const double total = static_cast<double>(result.total_main_chain_blocks);
    report.reward_share.resize(alpha.size());
    report.mp.resize(alpha.size());
    report.mpr.resize(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        report.reward_share[i] = static_cast<double>(result.main_chain_blocks[i]) / total;
        report.mp[i] = report.reward_share[i] - alpha[i];
        report.mpr[i] = report.mp[i] / alpha[i];
    }
    return report;
}

} // namespace minefair
