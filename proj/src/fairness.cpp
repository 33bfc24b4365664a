#include "minefair/fairness.hpp"

#include <cmath>
#include <string>

#include "minefair/rng.hpp"

namespace minefair {

namespace {

bool uniform_off_diagonal(const Matrix& delays) {
    const std::size_t n = delays.n();
    if (n < 2) return true;
    const double d = delays(0, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && delays(i, j) != d) return false;
    return true;
}

} // namespace

Matrix fork_matrix(const Matrix& delays_s, double block_interval_s) {
    if (block_interval_s <= 0.0)
        throw ScenarioError("block_interval_s must be > 0, got " +
                            std::to_string(block_interval_s));
    const std::size_t n = delays_s.n();
    Matrix fork(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* t = delays_s.row(i);
        double* f = fork.row(i);
        for (std::size_t j = 0; j < n; ++j)
            f[j] = (i == j) ? 0.0 : 1.0 - std::exp(-t[j] / block_interval_s);
    }
    return fork;
}

Matrix win_matrix_closed_form(const std::vector<double>& alpha, TieBreakRule rule) {
    const std::size_t n = alpha.size();
    Matrix win(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            switch (rule) {
                case TieBreakRule::FirstSeen: win(i, j) = 1.0 - alpha[j]; break;
                case TieBreakRule::Random: win(i, j) = (1.0 - alpha[j] + alpha[i]) / 2.0; break;
                case TieBreakRule::LastGenerated: win(i, j) = alpha[i]; break;
            }
        }
    }
    return win;
}

Matrix win_matrix_one_round_race(const std::vector<double>& alpha, const Matrix& delays_s,
                                 double block_interval_s, TieBreakRule rule) {
    const std::size_t n = alpha.size();

    // Third-party behavior under Random and LastGenerated does not depend on
    // arrival times, so the race collapses to the closed forms for any delay
    // matrix.
    if (rule != TieBreakRule::FirstSeen) return win_matrix_closed_form(alpha, rule);

    // FirstSeen: k joins i's branch iff T_ik < tau + T_jk, with tau the fork
    // time, exponential truncated to (0, T_ij). Writing E_xy = exp(-T_xy/T),
    //   P(tau > T_ik - T_jk) = clamp((E_ik / E_jk - E_ij) / (1 - E_ij)),
    // and the clamp also yields the correct terms for k = i (1, its own
    // branch) and k = j (0), so W_ij is one weighted sum over all k.
    Matrix win(n, 0.0);
    Matrix decay(n, 0.0);
    Matrix decay_inv(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* t = delays_s.row(i);
        double* e = decay.row(i);
        double* r = decay_inv.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = std::exp(-t[j] / block_interval_s);
            r[j] = 1.0 / e[j];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double* ei = decay.row(i);
        const double* ti = delays_s.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double eij = ei[j];
            if (eij == 1.0) {
                // T_ij = 0: forks of j against i are impossible; fill the
                // tau -> 0 limit so the entry is still well defined.
                const double* tj = delays_s.row(j);
                double mass = alpha[i];
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i && k != j && ti[k] < tj[k]) mass += alpha[k];
                win(i, j) = mass;
                continue;
            }
            const double inv = 1.0 / (1.0 - eij);
            const double* rj = decay_inv.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                double p = (ei[k] * rj[k] - eij) * inv;
                if (!(p > 0.0)) p = 0.0;
                if (p > 1.0) p = 1.0;
                acc += alpha[k] * p;
            }
            win(i, j) = acc;
        }
    }
    return win;
}

Matrix win_matrix(const Scenario& scenario, const Matrix& delays_s) {
    if (scenario.tie_break != TieBreakRule::FirstSeen || uniform_off_diagonal(delays_s))
        return win_matrix_closed_form(scenario.hashrates, scenario.tie_break);
    return win_matrix_one_round_race(scenario.hashrates, delays_s, scenario.block_interval_s,
                                     scenario.tie_break);
}

RoundInitiation stationary_round_initiation(const std::vector<double>& alpha, const Matrix& fork) {
    const std::size_t n = alpha.size();
    if (n == 0) throw ScenarioError("stationary_round_initiation needs a non-empty hashrate vector");
    if (fork.n() != n)
        throw ScenarioError("fork matrix size " + std::to_string(fork.n()) +
                            " does not match hashrate vector length " + std::to_string(n));

    // s_j = sum_k alpha_k F_jk: probability that the block after j's round
    // start spawns a fork. Fixed per matrix, so hoisted out of the loop.
    std::vector<double> fork_mass(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double* f = fork.row(j);
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += alpha[k] * f[k];
        fork_mass[j] = s;
    }

    RoundInitiation out;
    out.pi = alpha;
    std::vector<double> next(n, 0.0);
    std::vector<double> fork_dot(n, 0.0);

    for (std::size_t iter = 1; iter <= kStationaryMaxIterations; ++iter) {
        // pi'(i) = alpha_i * (sum_j (1 + s_j) pi_j  -  sum_j F_ji pi_j)
        double boosted = 0.0;
        for (std::size_t j = 0; j < n; ++j) boosted += (1.0 + fork_mass[j]) * out.pi[j];

        std::fill(fork_dot.begin(), fork_dot.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double pj = out.pi[j];
            if (pj == 0.0) continue;
            const double* f = fork.row(j);
            for (std::size_t i = 0; i < n; ++i) fork_dot[i] += f[i] * pj;
        }

        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = alpha[i] * (boosted - fork_dot[i]);
            sum += next[i];
        }

        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= sum;
            delta = std::max(delta, std::abs(next[i] - out.pi[i]));
        }
        out.pi.swap(next);
        out.iterations = iter;
        out.final_delta = delta;
        if (delta < kStationaryTolerance) return out;
    }
    throw ConvergenceError("round-initiation fixed point did not reach " +
                           std::to_string(kStationaryTolerance) + " within " +
                           std::to_string(kStationaryMaxIterations) + " iterations");
}

std::vector<double> reward_shares(const std::vector<double>& alpha, const std::vector<double>& pi,
                                  const Matrix& fork, const Matrix& win) {
    const std::size_t n = alpha.size();
    if (pi.size() != n || fork.n() != n || win.n() != n)
        throw ScenarioError("reward_shares inputs must share one dimension");

    // All inner sums run over ascending j so results are bit-reproducible.
    std::vector<double> reward(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* f = fork.row(i);
        const double* w = win.row(i);
        double lost = 0.0; // expected share of i's round starts lost to a forker
        for (std::size_t j = 0; j < n; ++j) lost += alpha[j] * f[j] * (1.0 - w[j]);

        double won = 0.0; // forks i raises against round starters and wins
        for (std::size_t j = 0; j < n; ++j) won += pi[j] * fork(j, i) * (1.0 - win(j, i));

        reward[i] = pi[i] * (1.0 - lost) + alpha[i] * won;
    }
    return reward;
}

FairnessReport fairness_report(const Scenario& scenario, std::optional<std::uint64_t> seed_override) {
    const std::uint64_t seed = seed_override.value_or(scenario.delays.seed);
    const Matrix delays = realize_delays(scenario.delays, scenario.n_miners, seed);
    const Matrix fork = fork_matrix(delays, scenario.block_interval_s);
    const Matrix win = win_matrix(scenario, delays);
    RoundInitiation stationary = stationary_round_initiation(scenario.hashrates, fork);

    FairnessReport report;
    report.alpha = scenario.hashrates;
    report.pi = std::move(stationary.pi);
    report.reward_share = reward_shares(scenario.hashrates, report.pi, fork, win);
    report.mp.resize(scenario.n_miners);
    report.mpr.resize(scenario.n_miners);
    for (std::size_t i = 0; i < scenario.n_miners; ++i) {
        report.mp[i] = report.reward_share[i] - report.alpha[i];
        report.mpr[i] = report.mp[i] / report.alpha[i];
    }
    report.scenario_fingerprint = scenario_fingerprint(scenario);
    return report;
}

} // namespace minefair
