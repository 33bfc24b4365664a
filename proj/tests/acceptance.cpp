// Acceptance suite: every release criterion with its tolerance pinned in
// code. Prints one PASS/FAIL line per criterion; exits nonzero if any fail.
// An optional argument restricts the run to one criterion number.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "minefair/ensemble.hpp"
#include "minefair/fairness.hpp"
#include "minefair/game.hpp"
#include "minefair/rng.hpp"
#include "minefair/scenario.hpp"
#include "minefair/simulator.hpp"
#include "minefair/theory.hpp"

#include "oracles.hpp"

using namespace minefair;
using namespace minefair::testing;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) failures++;
}

Scenario bundled_scenario() {
    const std::filesystem::path path =
        std::filesystem::path(MINEFAIR_SCENARIO_DIR) / "bitcoin-2024.scenario";
    return load_scenario(path.string());
}

Scenario with_fixed_delay(Scenario s, double d) {
    s.delays = DelayModel::fixed_uniform(d);
    return s;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. Theoretical slopes 2(1 - exp(-d/T)) at d/T in {0.01, 0.04, 0.07} match
//    the reference values to 1e-6.
void criterion_1() {
    const std::vector<double> alpha = {0.5, 0.3, 0.2};
    const double dts[3] = {0.01, 0.04, 0.07};
    const double expected[3] = {0.0199003, 0.0784211, 0.135212};
    bool pass = true;
    std::string detail = "theory slopes";
    for (int k = 0; k < 3; ++k) {
        const double slope = predict_mpr(alpha, dts[k] * 600.0, 600.0).slope;
        pass = pass && std::abs(slope - expected[k]) < 1e-6;
        detail += " " + fmt(slope);
    }
    report(1, pass, detail + " vs 0.0199003 / 0.0784211 / 0.135212 (tol 1e-6)");
}

// 2. Engine slope on the bundled 1000-miner scenario within 1% of 2f at the
//    same three d/T points.
void criterion_2() {
    const Scenario base = bundled_scenario();
    bool pass = true;
    std::string detail = "numeric vs theory slope rel.err:";
    for (double dt : {0.01, 0.04, 0.07}) {
        const Scenario s = with_fixed_delay(base, dt * base.block_interval_s);
        const LinearFit fit = fit_mpr_line(fairness_report(s));
        const double theory = 2.0 * (1.0 - std::exp(-dt));
        const double rel = std::abs(fit.slope - theory) / theory;
        pass = pass && rel <= 0.01;
        detail += " " + fmt(rel);
    }
    report(2, pass, detail + " (tol 0.01)");
}

// 3. Linearity: correlation >= 0.9999 for each tie-break rule at d/T = 0.07.
void criterion_3() {
    const Scenario base = bundled_scenario();
    bool pass = true;
    std::string detail = "correlation";
    for (TieBreakRule rule : {TieBreakRule::FirstSeen, TieBreakRule::Random,
                              TieBreakRule::LastGenerated}) {
        Scenario s = with_fixed_delay(base, 0.07 * base.block_interval_s);
        s.tie_break = rule;
        const LinearFit fit = fit_mpr_line(fairness_report(s));
        pass = pass && fit.correlation >= 0.9999;
        detail += std::string(" ") + to_string(rule) + "=" + fmt(fit.correlation);
    }
    report(3, pass, detail + " (floor 0.9999)");
}

// 4. Zero-point identity: fitted zero point within 0.5% of sum(alpha^2) on
//    the bundled scenario; within 1e-10 on a synthetic exact line.
void criterion_4() {
    const Scenario s = bundled_scenario();
    const double engine_residual = zero_point_identity_check(fairness_report(s));

    FairnessReport synthetic;
    synthetic.alpha = s.hashrates;
    const double q = sum_squared(synthetic.alpha);
    for (double a : synthetic.alpha) synthetic.mpr.push_back(0.0199 * (a - q));
    const double exact_residual = zero_point_identity_check(synthetic);

    const bool pass = engine_residual <= 0.005 && exact_residual <= 1e-10;
    report(4, pass,
           "zero-point residual engine=" + fmt(engine_residual) + " (tol 0.005), synthetic=" +
               fmt(exact_residual) + " (tol 1e-10)");
}

// 5. Conservation over 50 randomized scenarios: stochastic transition
//    columns (1e-12), sum r = 1 and sum MP = 0 (1e-10), and MPR == 0 when
//    all delays are zero.
void criterion_5() {
    bool pass = true;
    double worst_column = 0.0, worst_r = 0.0, worst_mp = 0.0, worst_nofork = 0.0;
    for (std::uint64_t idx = 0; idx < 50; ++idx) {
        const Scenario s = random_scenario(0xC0FFEE + idx);
        const Matrix delays = realize_delays(s.delays, s.n_miners, 0);
        const Matrix fork = fork_matrix(delays, s.block_interval_s);

        for (std::size_t j = 0; j < s.n_miners; ++j) {
            double mass = 0.0;
            for (std::size_t k = 0; k < s.n_miners; ++k) mass += s.hashrates[k] * fork(j, k);
            double column = 0.0;
            for (std::size_t i = 0; i < s.n_miners; ++i)
                column += s.hashrates[i] * (1.0 - fork(j, i)) + s.hashrates[i] * mass;
            worst_column = std::max(worst_column, std::abs(column - 1.0));
        }

        const FairnessReport report_rand = fairness_report(s);
        double r_sum = 0.0, mp_sum = 0.0;
        for (std::size_t i = 0; i < s.n_miners; ++i) {
            r_sum += report_rand.reward_share[i];
            mp_sum += report_rand.mp[i];
        }
        worst_r = std::max(worst_r, std::abs(r_sum - 1.0));
        worst_mp = std::max(worst_mp, std::abs(mp_sum));

        Scenario no_fork = s;
        no_fork.delays = DelayModel::fixed_uniform(0.0);
        const FairnessReport report_zero = fairness_report(no_fork);
        for (double m : report_zero.mpr) worst_nofork = std::max(worst_nofork, std::abs(m));
    }
    pass = worst_column <= 1e-12 && worst_r <= 1e-10 && worst_mp <= 1e-10 &&
           worst_nofork <= 1e-12;
    report(5, pass,
           "50 scenarios: max |column-1|=" + fmt(worst_column) + " (1e-12), |sum r - 1|=" +
               fmt(worst_r) + ", |sum MP|=" + fmt(worst_mp) + " (1e-10), no-fork |MPR|=" +
               fmt(worst_nofork));
}

// 6. Oracle equivalence: 2-miner closed form to 1e-12; 10-miner simulator
//    within 3 binomial SE of the engine at 1e6 rounds.
void criterion_6() {
    const double f = 0.01;
    const double d = -600.0 * std::log(1.0 - f);
    Scenario two;
    two.n_miners = 2;
    two.hashrates = {0.6, 0.4};
    two.block_interval_s = 600.0;
    two.delays = DelayModel::fixed_uniform(d);
    two.tie_break = TieBreakRule::FirstSeen;
    two.validate_and_normalize();
    const FairnessReport engine_two = fairness_report(two);
    const TwoMinerOracle oracle = two_miner_oracle(0.6, f, TieBreakRule::FirstSeen);
    const double oracle_err = std::max(std::abs(engine_two.pi[0] - oracle.pi1),
                                       std::abs(engine_two.reward_share[0] - oracle.r1));

    PoolDistributionSpec spec;
    spec.named_shares = {{"a", 0.293}, {"b", 0.247}, {"c", 0.131}, {"d", 0.097}};
    spec.fill_to = 10;
    Scenario ten;
    ten.n_miners = 10;
    ten.hashrates = expand_pool_distribution(spec);
    ten.block_interval_s = 600.0;
    ten.delays = DelayModel::fixed_uniform(24.0);
    ten.tie_break = TieBreakRule::FirstSeen;
    ten.validate_and_normalize();

    SimConfig config;
    config.scenario = ten;
    config.rounds = 1000000;
    config.seed = 20240607;
    const SimResult sim = simulate(config);
    const FairnessReport engine_ten = fairness_report(ten);
    double max_z = 0.0;
    for (std::size_t i = 0; i < 10; ++i)
        max_z = std::max(max_z, std::abs(sim.empirical_r[i] - engine_ten.reward_share[i]) /
                                    sim.r_std_error[i]);

    const bool pass = oracle_err < 1e-12 && max_z < 3.0;
    report(6, pass,
           "2-miner oracle err=" + fmt(oracle_err) + " (tol 1e-12); simulator max |z|=" +
               fmt(max_z) + " SE (tol 3)");
}

// 7. Ensemble: 100 logistic draws at N=1000 — per-miner mean MPR within 10%
//    of the fixed-delay MPR range, and std(MPR) anti-correlated with alpha.
//    The first clause is an extreme-value statistic: the residual miners'
//    100-draw standard error puts the 10% bound near 3.4 sigma of the
//    per-miner max, so the master seed is pinned and the run is exactly
//    reproducible (libm-level perturbations sit ~10 orders below the
//    observed margin).
void criterion_7() {
    EnsembleConfig config;
    config.scenario = bundled_scenario();
    config.scenario.delays = DelayModel::logistic_random(6.0);
    config.n_draws = 100;
    config.master_seed = 1009;
    const EnsembleStats stats = run_ensemble(config);

    double lo = stats.mpr_fixed_reference[0], hi = stats.mpr_fixed_reference[0];
    for (double v : stats.mpr_fixed_reference) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double range = hi - lo;
    double worst = 0.0;
    for (std::size_t i = 0; i < stats.mpr_mean.size(); ++i)
        worst = std::max(worst, std::abs(stats.mpr_mean[i] - stats.mpr_fixed_reference[i]));

    const double trend = std_vs_hashrate_trend(stats, config.scenario.hashrates);
    const bool pass = worst <= 0.10 * range && trend < 0.0;
    report(7, pass,
           "max |mean - fixed| = " + fmt(worst) + " vs 10% of range = " + fmt(0.10 * range) +
               "; spearman(alpha, std) = " + fmt(trend) + " (< 0)");
}

// 8. Game: unique pure equilibrium at (fast, fast) on the bundled scenario
//    with delays (3, 6), large group strictly ahead there.
void criterion_8() {
    const Scenario s = bundled_scenario();
    const GroupPartition partition = partition_groups(s.hashrates);
    const GameOutcome outcome = solve_game(s, partition, 3.0, 6.0);
    const auto eq = outcome.equilibria();
    const GameCell& ff = outcome.cell(GroupStrategy::Fast, GroupStrategy::Fast);
    const bool unique_ff = eq.size() == 1 && eq[0] == &ff;
    const bool ordered = ff.utility_large > ff.utility_small;
    report(8, unique_ff && ordered,
           std::string("equilibria=") + std::to_string(eq.size()) + " at (fast,fast)=" +
               (ff.equilibrium ? "yes" : "no") + "; utilities large=" + fmt(ff.utility_large) +
               " > small=" + fmt(ff.utility_small));
}

// 9. The naive prediction (fork effect on round initiation ignored) is
//    exactly half the full one, elementwise.
void criterion_9() {
    const Scenario s = bundled_scenario();
    const double f = 1.0 - std::exp(-6.0 / 600.0);
    const TheoryPrediction full = predict_mpr(s.hashrates, 6.0, 600.0);
    const std::vector<double> naive = naive_mpr(s.hashrates, f);
    bool pass = naive.size() == full.mpr.size();
    for (std::size_t i = 0; pass && i < naive.size(); ++i)
        pass = naive[i] == full.mpr[i] / 2.0;
    report(9, pass, "naive == full/2 elementwise, exact");
}

} // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    const std::vector<std::function<void()>> criteria = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9};

    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
        if (only != 0 && only != k) continue;
        try {
            criteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            report(k, false, std::string("exception: ") + e.what());
        }
    }
    return failures == 0 ? 0 : 1;
}
