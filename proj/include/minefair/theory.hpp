#pragma once

#include <vector>

#include "minefair/fairness.hpp"

namespace minefair {

// Ordinary least squares of MPR against alpha over all miners.
struct LinearFit {
    double slope = 0.0;
    double zero_point = 0.0;  // -intercept / slope; NaN when slope == 0
    double correlation = 0.0; // Pearson; NaN when the MPR values are constant
};

// First-order closed form under uniform delay d: per-miner
// MPR_i = 2 f (alpha_i - sum_j alpha_j^2) with f = 1 - exp(-d/T). Holds for
// every tie-break rule; the rule enters only at order f^2.
struct TheoryPrediction {
    double fork_rate = 0.0;  // f
    double slope = 0.0;      // 2 f
    double zero_point = 0.0; // sum of squared hashrates
    std::vector<double> mpr;
    // d/T above 0.1 leaves the envelope the closed form was validated in;
    // callers warn rather than fail.
    bool beyond_validated_envelope = false;
};

double sum_squared(const std::vector<double>& alpha);

TheoryPrediction predict_mpr(const std::vector<double>& alpha, double delay_s,
                             double block_interval_s);

// First-order round-initiation shares: pi_i ~= alpha_i + alpha_i f (alpha_i - sum alpha^2).
std::vector<double> predict_round_initiation(const std::vector<double>& alpha, double fork_rate);

// What the linearity looks like when the fork effect on round initiation is
// ignored: exactly half the full prediction, f (alpha_i - sum alpha^2).
std::vector<double> naive_mpr(const std::vector<double>& alpha, double fork_rate);

// OLS fit of report.mpr against report.alpha. Throws ScenarioError when
// fewer than 3 distinct hashrate values make the fit undefined.
LinearFit fit_mpr_line(const FairnessReport& report);

// Relative distance between the fitted zero point and sum(alpha^2). When the
// fit is degenerate (all hashrates equal) the predicted line's zero point is
// used, which makes the residual exactly zero.
double zero_point_identity_check(const FairnessReport& report);

} // namespace minefair
