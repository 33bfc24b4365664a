#include "minefair/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "minefair/errors.hpp"

namespace minefair {

double sum_squared(const std::vector<double>& alpha) {
    double q = 0.0;
    for (double a : alpha) q += a * a;
    return q;
}

TheoryPrediction predict_mpr(const std::vector<double>& alpha, double delay_s,
                             double block_interval_s) {
    if (block_interval_s <= 0.0)
        throw ScenarioError("block_interval_s must be > 0 in predict_mpr");
    if (delay_s < 0.0) throw ScenarioError("delay must be >= 0 in predict_mpr");

    TheoryPrediction p;
    const double ratio = delay_s / block_interval_s;
    p.fork_rate = 1.0 - std::exp(-ratio);
    p.slope = 2.0 * p.fork_rate;
    p.zero_point = sum_squared(alpha);
    p.beyond_validated_envelope = ratio > 0.1;
    p.mpr.resize(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        p.mpr[i] = p.slope * (alpha[i] - p.zero_point);
    return p;
}

std::vector<double> predict_round_initiation(const std::vector<double>& alpha, double fork_rate) {
    if (fork_rate < 0.0 || fork_rate >= 1.0)
        throw ScenarioError("fork rate must lie in [0, 1)");
    const double q = sum_squared(alpha);
    std::vector<double> pi(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        pi[i] = alpha[i] + alpha[i] * fork_rate * (alpha[i] - q);
    return pi;
}

std::vector<double> naive_mpr(const std::vector<double>& alpha, double fork_rate) {
    if (fork_rate < 0.0 || fork_rate >= 1.0)
        throw ScenarioError("fork rate must lie in [0, 1)");
    const double q = sum_squared(alpha);
    std::vector<double> mpr(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) mpr[i] = fork_rate * (alpha[i] - q);
    return mpr;
}

LinearFit fit_mpr_line(const FairnessReport& report) {
    const std::vector<double>& x = report.alpha;
    const std::vector<double>& y = report.mpr;
    if (x.size() != y.size() || x.empty())
        throw ScenarioError("fit_mpr_line needs a populated report");

    std::set<double> distinct(x.begin(), x.end());
    if (distinct.size() < 3)
        throw ScenarioError("fit undefined: needs >= 3 distinct hashrate values, got " +
                            std::to_string(distinct.size()));

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    const double intercept = my - fit.slope * mx;
    fit.zero_point = (fit.slope == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                        : -intercept / fit.slope;
    fit.correlation = (syy == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                   : sxy / std::sqrt(sxx * syy);
    return fit;
}

double zero_point_identity_check(const FairnessReport& report) {
    const double q = sum_squared(report.alpha);
    double fitted = q;
    try {
        fitted = fit_mpr_line(report).zero_point;
    } catch (const ScenarioError&) {
        // Degenerate fit (all hashrates equal): the predicted line's zero
        // point is sum(alpha^2) itself, so the residual is zero.
        return 0.0;
    }
    return std::abs(fitted - q) / q;
}

} // namespace minefair
