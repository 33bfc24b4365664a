#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minefair/errors.hpp"
#include "minefair/matrix.hpp"

namespace minefair {

enum class TieBreakRule { FirstSeen, Random, LastGenerated };

const char* to_string(TieBreakRule rule);
TieBreakRule tie_break_from_string(const std::string& name);

// Named top-pool shares plus an even split of the residual hash power over
// the remaining miners, up to `fill_to` miners in total.
struct PoolDistributionSpec {
    std::vector<std::pair<std::string, double>> named_shares;
    std::size_t fill_to = 0;
};

// One of four delay models. A tagged struct rather than a variant so the
// scenario file loader, the Python bindings and the validators stay plain.
struct DelayModel {
    enum class Kind { FixedUniform, ExplicitMatrix, LogisticRandom, GroupedFixed };

    Kind kind = Kind::FixedUniform;

    // FixedUniform: every off-diagonal delay equals this.
    double fixed_delay_s = 0.0;

    // ExplicitMatrix: full N x N delay matrix in seconds.
    Matrix matrix_s;

    // LogisticRandom: i.i.d. per ordered pair from the logistic distribution
    // with this mean and scale mean/ln(N-1) (the gossip-model fit; the CDF at
    // zero is then exactly 1/N). Negative draws clamp to zero. With
    // `symmetric` set, T_ji is copied from T_ij.
    double logistic_mean_s = 0.0;
    bool symmetric = false;
    std::uint64_t seed = 0;

    // GroupedFixed: group id per miner plus a per-group-pair delay table.
    std::vector<int> groups;
    Matrix group_delay_s;

    static DelayModel fixed_uniform(double d_s);
    static DelayModel explicit_matrix(Matrix m);
    static DelayModel logistic_random(double mean_s, bool symmetric = false,
                                      std::uint64_t seed = 0);
    static DelayModel grouped_fixed(std::vector<int> groups, Matrix group_delay_s);

    // Throws ScenarioError naming the offending field. All delays must be
    // finite and >= 0; explicit matrices must have a zero diagonal;
    // LogisticRandom needs mean > 0 and n >= 3 (the gossip scale ln(N-1)
    // vanishes at N = 2).
    void validate(std::size_t n_miners) const;

    bool deterministic() const { return kind != Kind::LogisticRandom; }
};

// The complete experiment definition.
struct Scenario {
    std::size_t n_miners = 0;
    std::vector<double> hashrates; // sums to 1 after validation
    double block_interval_s = 0.0;
    DelayModel delays;
    TieBreakRule tie_break = TieBreakRule::FirstSeen;

    // Validates every invariant (n >= 2, T > 0, hashrates positive, delay
    // model consistent) and normalizes the hashrates. Inputs whose sum is
    // within 1e-9 of 1 are renormalized; larger deviations are errors, so
    // decimal round-off in hand-written files passes but real mistakes do
    // not.
    void validate_and_normalize();
};

// Scenario file loading. The file is JSON with fields n_miners,
// block_interval_s, tie_break, hashrates (array, or pool spec object with
// named_shares and fill_to) and delays (object with "type" plus the model's
// parameters). See README for the full schema.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

// Canonical serialization of a validated scenario (sorted keys, realized
// hashrates) and the FNV-1a 64 content hash over it, hex-encoded. Identical
// effective inputs give identical fingerprints regardless of file formatting.
std::string canonical_scenario_json(const Scenario& scenario);
std::string scenario_fingerprint(const Scenario& scenario);

std::uint64_t fnv1a64(const void* data, std::size_t size);

// First the named shares in order, then the residual split evenly over the
// remaining miners. Throws if the residual is not positive or fill_to does
// not leave room for it.
std::vector<double> expand_pool_distribution(const PoolDistributionSpec& spec);

// Realizes the delay matrix: T_ii = 0 always; deterministic models ignore
// rng_seed. Pure function of (model, n, rng_seed).
Matrix realize_delays(const DelayModel& model, std::size_t n, std::uint64_t rng_seed);

} // namespace minefair
