#include "minefair/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minefair/fairness.hpp"
#include "minefair/parallel.hpp"
#include "minefair/rng.hpp"

namespace minefair {

EnsembleStats run_ensemble(const EnsembleConfig& config) {
    if (config.n_draws < 2) throw ScenarioError("n_draws must be >= 2");
    Scenario scenario = config.scenario;
    scenario.validate_and_normalize();
    const std::size_t n = scenario.n_miners;

    // Fixed-delay reference: the random model's mean, or the model itself
    // when it is already deterministic (the degenerate zero-variance case).
    Scenario reference = scenario;
    if (scenario.delays.kind == DelayModel::Kind::LogisticRandom)
        reference.delays = DelayModel::fixed_uniform(scenario.delays.logistic_mean_s);

    std::vector<std::vector<double>> draws(config.n_draws);
    parallel_for(config.n_draws, [&](std::size_t t) {
        draws[t] = fairness_report(scenario, derive_child_seed(config.master_seed, t)).mpr;
    });

    EnsembleStats stats;
    stats.n_draws = config.n_draws;
    stats.mpr_mean.assign(n, 0.0);
    stats.mpr_std.assign(n, 0.0);
    const double count = static_cast<double>(config.n_draws);
    for (std::size_t t = 0; t < config.n_draws; ++t)
        for (std::size_t i = 0; i < n; ++i) stats.mpr_mean[i] += draws[t][i];
    for (std::size_t i = 0; i < n; ++i) stats.mpr_mean[i] /= count;
    for (std::size_t t = 0; t < config.n_draws; ++t)
        for (std::size_t i = 0; i < n; ++i) {
            const double d = draws[t][i] - stats.mpr_mean[i];
            stats.mpr_std[i] += d * d;
        }
    for (std::size_t i = 0; i < n; ++i)
        stats.mpr_std[i] = std::sqrt(stats.mpr_std[i] / (count - 1.0));

    stats.mpr_fixed_reference = fairness_report(reference).mpr;
    return stats;
}

namespace {

// Average ranks, 1-based; tied runs share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos + 1;
        while (end < n && values[order[end]] == values[order[pos]]) ++end;
        const double mean_rank = (static_cast<double>(pos) + static_cast<double>(end - 1)) / 2.0 + 1.0;
        for (std::size_t k = pos; k < end; ++k) ranks[order[k]] = mean_rank;
        pos = end;
    }
    return ranks;
}

} // namespace

double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ScenarioError("spearman correlation needs two equal-length vectors of size >= 2");
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // Fully tied side: no ordering information, correlation defined as 0.
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double std_vs_hashrate_trend(const EnsembleStats& stats, const std::vector<double>& alpha) {
    if (alpha.size() < 10)
        throw ScenarioError("std_vs_hashrate_trend needs at least 10 miners");
    if (stats.mpr_std.size() != alpha.size())
        throw ScenarioError("ensemble stats do not match hashrate vector length");
    return spearman_rank_correlation(alpha, stats.mpr_std);
}

} // namespace minefair
