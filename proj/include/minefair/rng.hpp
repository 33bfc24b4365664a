#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace minefair {

// Output k of the splitmix64 stream seeded with `state` (Steele, Lea &
// Flood 2014). Closed form, no iteration.
inline std::uint64_t splitmix64_at(std::uint64_t state, std::uint64_t k) {
    std::uint64_t z = state + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed-splitting rule used everywhere one configured seed drives several
// independent streams (per-draw delay realizations, delay vs round sampling
// in the simulator): child k of a master seed is splitmix64 output k.
inline std::uint64_t derive_child_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64_at(master_seed, index);
}

// All randomness flows through this wrapper: std::mt19937_64 (the engine is
// fully specified by the standard, so the raw stream is portable) plus
// explicit inverse-CDF conversions. std::uniform_real_distribution and
// friends are implementation-defined and would break cross-platform
// reproducibility, so they are not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on the open interval (0, 1): top 53 bits, offset half an ulp so
    // 0 and 1 are unreachable and log()/logit() stay finite.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double mean) { return -mean * std::log(uniform01()); }

    // Location/scale logistic via the inverse CDF.
    double logistic(double location, double scale) {
        const double u = uniform01();
        return location + scale * std::log(u / (1.0 - u));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Draw an index from the distribution whose inclusive prefix sums are
    // `cdf` (ascending, cdf.back() == total mass).
    std::size_t categorical(const std::vector<double>& cdf) {
        const double u = uniform01() * cdf.back();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::size_t>(it - cdf.begin());
        return std::min(idx, cdf.size() - 1);
    }

private:
    std::mt19937_64 engine_;
};

inline std::vector<double> cumulative_sums(const std::vector<double>& weights) {
    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cdf[i] = acc;
    }
    return cdf;
}

} // namespace minefair
