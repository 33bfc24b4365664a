#pragma once

// Test-only oracles. Everything here recomputes model quantities through a
// different route than the engine (closed forms, materialized transition
// matrices, literal formula transliterations) so agreement is meaningful.

#include <cmath>
#include <cstdint>
#include <vector>

#include "minefair/matrix.hpp"
#include "minefair/rng.hpp"
#include "minefair/scenario.hpp"

namespace minefair::testing {

struct TwoMinerOracle {
    double pi1, pi2;
    double r1, r2;
    double mpr1, mpr2;
};

// Exact 2-state solve: stationary distribution from the 2x2 column-stochastic
// transition matrix, rewards by hand-expanding the reward formula with the
// per-rule win probabilities. Uniform off-diagonal fork probability f.
inline TwoMinerOracle two_miner_oracle(double a1, double f, TieBreakRule rule) {
    const double a2 = 1.0 - a1;
    const double s1 = a2 * f; // fork mass when miner 1 starts the round
    const double s2 = a1 * f;

    // M(i|j) = a_i (1 - F_ji) + a_i s_j; stationary of a 2-state chain is
    // proportional to the opposite off-diagonal entry.
    const double m12 = a1 * (1.0 - f) + a1 * s2; // 1 starts next | 2 started
    const double m21 = a2 * (1.0 - f) + a2 * s1;

    TwoMinerOracle o;
    o.pi1 = m12 / (m12 + m21);
    o.pi2 = m21 / (m12 + m21);

    double w12, w21; // P(round starter wins | fork starter vs other)
    switch (rule) {
        case TieBreakRule::FirstSeen:
            w12 = 1.0 - a2;
            w21 = 1.0 - a1;
            break;
        case TieBreakRule::Random:
            w12 = (1.0 - a2 + a1) / 2.0;
            w21 = (1.0 - a1 + a2) / 2.0;
            break;
        case TieBreakRule::LastGenerated:
            w12 = a1;
            w21 = a2;
            break;
    }

    o.r1 = o.pi1 * (1.0 - a2 * f + a2 * f * w12) + o.pi2 * a1 * f * (1.0 - w21);
    o.r2 = o.pi2 * (1.0 - a1 * f + a1 * f * w21) + o.pi1 * a2 * f * (1.0 - w12);
    o.mpr1 = (o.r1 - a1) / a1;
    o.mpr2 = (o.r2 - a2) / a2;
    return o;
}

// Materializes the full transition matrix and power-iterates it; the engine
// never forms this matrix, so this is an independent route to pi.
inline std::vector<double> stationary_bruteforce(const std::vector<double>& alpha,
                                                 const Matrix& fork) {
    const std::size_t n = alpha.size();
    Matrix trans(n, 0.0); // trans(i, j) = P(next starter = i | previous = j)
    for (std::size_t j = 0; j < n; ++j) {
        double fork_mass = 0.0;
        for (std::size_t k = 0; k < n; ++k) fork_mass += alpha[k] * fork(j, k);
        for (std::size_t i = 0; i < n; ++i)
            trans(i, j) = alpha[i] * (1.0 - fork(j, i)) + alpha[i] * fork_mass;
    }

    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < 100000; ++iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += trans(i, j) * pi[j];
            next[i] = acc;
        }
        double sum = 0.0;
        for (double v : next) sum += v;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= sum;
            delta = std::max(delta, std::abs(next[i] - pi[i]));
        }
        pi.swap(next);
        if (delta < 1e-16) break;
    }
    return pi;
}

// Literal transliteration of the reward share expression, ungrouped.
inline std::vector<double> reward_bruteforce(const std::vector<double>& alpha,
                                             const std::vector<double>& pi, const Matrix& fork,
                                             const Matrix& win) {
    const std::size_t n = alpha.size();
    std::vector<double> r(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double no_fork = 1.0;
        double fork_won = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            no_fork -= alpha[j] * fork(i, j);
            fork_won += alpha[j] * fork(i, j) * win(i, j);
        }
        double raised_and_won = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            raised_and_won += pi[j] * alpha[i] * fork(j, i) * (1.0 - win(j, i));
        r[i] = pi[i] * (no_fork + fork_won) + raised_and_won;
    }
    return r;
}

// Logistic sampling through a different construction: the difference of two
// independent standard Gumbel draws is standard logistic.
inline double logistic_via_gumbel(Rng& rng, double location, double scale) {
    const double g1 = -std::log(-std::log(rng.uniform01()));
    const double g2 = -std::log(-std::log(rng.uniform01()));
    return location + scale * (g1 - g2);
}

// Random small scenario for property tests: hashrates from normalized
// exponential draws, an arbitrary asymmetric delay matrix bounded by
// max_d_over_t * T, cycling tie-break rules.
inline Scenario random_scenario(std::uint64_t seed, std::size_t min_n = 2, std::size_t max_n = 50,
                                double max_d_over_t = 0.1) {
    Rng rng(seed);
    const std::size_t n = min_n + static_cast<std::size_t>(rng.next_u64() % (max_n - min_n + 1));
    const double block_interval = 600.0;

    std::vector<double> alpha(n);
    double sum = 0.0;
    for (double& a : alpha) {
        a = rng.exponential(1.0) + 1e-6;
        sum += a;
    }
    for (double& a : alpha) a /= sum;

    Matrix delays(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) delays(i, j) = rng.uniform01() * max_d_over_t * block_interval;

    Scenario s;
    s.n_miners = n;
    s.hashrates = alpha;
    s.block_interval_s = block_interval;
    s.delays = DelayModel::explicit_matrix(delays);
    const TieBreakRule rules[3] = {TieBreakRule::FirstSeen, TieBreakRule::Random,
                                   TieBreakRule::LastGenerated};
    s.tie_break = rules[seed % 3];
    s.validate_and_normalize();
    return s;
}

} // namespace minefair::testing
