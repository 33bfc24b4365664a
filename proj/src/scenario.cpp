#include "minefair/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minefair/rng.hpp"

namespace minefair {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& message) { throw ScenarioError(message); }

void require_finite_nonneg(double v, const std::string& field) {
    if (!std::isfinite(v) || v < 0.0) fail(field + " must be finite and >= 0, got " + num(v));
}

} // namespace

const char* to_string(TieBreakRule rule) {
    switch (rule) {
        case TieBreakRule::FirstSeen: return "first_seen";
        case TieBreakRule::Random: return "random";
        case TieBreakRule::LastGenerated: return "last_generated";
    }
    return "first_seen";
}

TieBreakRule tie_break_from_string(const std::string& name) {
    if (name == "first_seen") return TieBreakRule::FirstSeen;
    if (name == "random") return TieBreakRule::Random;
    if (name == "last_generated") return TieBreakRule::LastGenerated;
    fail("tie_break must be one of first_seen, random, last_generated; got \"" + name + "\"");
}

DelayModel DelayModel::fixed_uniform(double d_s) {
    DelayModel m;
    m.kind = Kind::FixedUniform;
    m.fixed_delay_s = d_s;
    return m;
}

DelayModel DelayModel::explicit_matrix(Matrix mat) {
    DelayModel m;
    m.kind = Kind::ExplicitMatrix;
    m.matrix_s = std::move(mat);
    return m;
}

DelayModel DelayModel::logistic_random(double mean_s, bool symmetric, std::uint64_t seed) {
    DelayModel m;
    m.kind = Kind::LogisticRandom;
    m.logistic_mean_s = mean_s;
    m.symmetric = symmetric;
    m.seed = seed;
    return m;
}

DelayModel DelayModel::grouped_fixed(std::vector<int> groups, Matrix group_delay_s) {
    DelayModel m;
    m.kind = Kind::GroupedFixed;
    m.groups = std::move(groups);
    m.group_delay_s = std::move(group_delay_s);
    return m;
}

void DelayModel::validate(std::size_t n_miners) const {
    switch (kind) {
        case Kind::FixedUniform:
            require_finite_nonneg(fixed_delay_s, "delays.d_s");
            break;
        case Kind::ExplicitMatrix: {
            if (matrix_s.n() != n_miners)
                fail("delays.matrix_s must be " + std::to_string(n_miners) + "x" +
                     std::to_string(n_miners) + ", got " + std::to_string(matrix_s.n()));
            for (std::size_t i = 0; i < n_miners; ++i) {
                if (matrix_s(i, i) != 0.0)
                    fail("delays.matrix_s self-delay T[" + std::to_string(i) + "][" +
                         std::to_string(i) + "] must be 0, got " + num(matrix_s(i, i)));
                for (std::size_t j = 0; j < n_miners; ++j)
                    require_finite_nonneg(matrix_s(i, j), "delays.matrix_s[" + std::to_string(i) +
                                                              "][" + std::to_string(j) + "]");
            }
            break;
        }
        case Kind::LogisticRandom:
            if (!std::isfinite(logistic_mean_s) || logistic_mean_s <= 0.0)
                fail("delays.mean_s must be > 0, got " + num(logistic_mean_s));
            if (n_miners < 3)
                fail("delays of type logistic_random need n_miners >= 3 (the gossip scale "
                     "ln(N-1) vanishes at N = 2)");
            break;
        case Kind::GroupedFixed: {
            if (groups.size() != n_miners)
                fail("delays.groups must list one group per miner (" + std::to_string(n_miners) +
                     "), got " + std::to_string(groups.size()));
            const std::size_t g = group_delay_s.n();
            if (g == 0) fail("delays.delay_s group table must be non-empty");
            for (std::size_t i = 0; i < n_miners; ++i)
                if (groups[i] < 0 || static_cast<std::size_t>(groups[i]) >= g)
                    fail("delays.groups[" + std::to_string(i) + "] = " +
                         std::to_string(groups[i]) + " is outside the " + std::to_string(g) +
                         "-group delay table");
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = 0; b < g; ++b)
                    require_finite_nonneg(group_delay_s(a, b), "delays.delay_s[" +
                                                                   std::to_string(a) + "][" +
                                                                   std::to_string(b) + "]");
            break;
        }
    }
}

void Scenario::validate_and_normalize() {
    if (n_miners < 2) fail("n_miners must be >= 2, got " + std::to_string(n_miners));
    if (!std::isfinite(block_interval_s) || block_interval_s <= 0.0)
        fail("block_interval_s must be > 0, got " + num(block_interval_s));
    if (hashrates.size() != n_miners)
        fail("hashrates has " + std::to_string(hashrates.size()) + " entries, expected n_miners = " +
             std::to_string(n_miners));

    double sum = 0.0;
    for (std::size_t i = 0; i < hashrates.size(); ++i) {
        const double a = hashrates[i];
        if (!std::isfinite(a) || a <= 0.0)
            fail("hashrates[" + std::to_string(i) + "] must be > 0, got " + num(a));
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail("hashrates sum to " + num(sum));
    for (double& a : hashrates) a /= sum;

    delays.validate(n_miners);
}

std::vector<double> expand_pool_distribution(const PoolDistributionSpec& spec) {
    const std::size_t named = spec.named_shares.size();
    if (spec.fill_to <= named)
        fail("pool spec fill_to = " + std::to_string(spec.fill_to) +
             " leaves no room beyond the " + std::to_string(named) + " named shares");

    double named_sum = 0.0;
    for (std::size_t i = 0; i < named; ++i) {
        const double share = spec.named_shares[i].second;
        if (!std::isfinite(share) || share <= 0.0)
            fail("named share \"" + spec.named_shares[i].first + "\" must be > 0, got " +
                 num(share));
        named_sum += share;
    }
    const double residual = 1.0 - named_sum;
    if (residual <= 0.0)
        fail("named shares sum to " + num(named_sum) + ", leaving no residual to distribute");

    std::vector<double> alpha(spec.fill_to);
    const double each = residual / static_cast<double>(spec.fill_to - named);
    for (std::size_t i = 0; i < named; ++i) alpha[i] = spec.named_shares[i].second;
    for (std::size_t i = named; i < spec.fill_to; ++i) alpha[i] = each;
    return alpha;
}

Matrix realize_delays(const DelayModel& model, std::size_t n, std::uint64_t rng_seed) {
    model.validate(n);
    Matrix delays(n, 0.0);
    switch (model.kind) {
        case DelayModel::Kind::FixedUniform:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) delays(i, j) = model.fixed_delay_s;
            break;
        case DelayModel::Kind::ExplicitMatrix:
            delays = model.matrix_s;
            break;
        case DelayModel::Kind::LogisticRandom: {
            // Location = configured mean, scale = mean / ln(n-1); this is the
            // logistic distribution whose CDF matches the gossip curve
            // I(t)/N, and its mass below zero is exactly 1/n.
            const double location = model.logistic_mean_s;
            const double scale = model.logistic_mean_s / std::log(static_cast<double>(n - 1));
            Rng rng(rng_seed);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if (model.symmetric && j < i) {
                        delays(i, j) = delays(j, i);
                        continue;
                    }
                    delays(i, j) = std::max(0.0, rng.logistic(location, scale));
                }
            }
            break;
        }
        case DelayModel::Kind::GroupedFixed:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j)
                        delays(i, j) = model.group_delay_s(static_cast<std::size_t>(model.groups[i]),
                                                           static_cast<std::size_t>(model.groups[j]));
            break;
    }
    return delays;
}

namespace {

json delay_model_to_json(const DelayModel& m) {
    json j;
    switch (m.kind) {
        case DelayModel::Kind::FixedUniform:
            j["type"] = "fixed_uniform";
            j["d_s"] = m.fixed_delay_s;
            break;
        case DelayModel::Kind::ExplicitMatrix: {
            j["type"] = "explicit_matrix";
            json rows = json::array();
            for (std::size_t i = 0; i < m.matrix_s.n(); ++i) {
                json row = json::array();
                for (std::size_t k = 0; k < m.matrix_s.n(); ++k) row.push_back(m.matrix_s(i, k));
                rows.push_back(std::move(row));
            }
            j["matrix_s"] = std::move(rows);
            break;
        }
        case DelayModel::Kind::LogisticRandom:
            j["type"] = "logistic_random";
            j["mean_s"] = m.logistic_mean_s;
            j["symmetric"] = m.symmetric;
            j["seed"] = m.seed;
            break;
        case DelayModel::Kind::GroupedFixed: {
            j["type"] = "grouped_fixed";
            j["groups"] = m.groups;
            json rows = json::array();
            for (std::size_t a = 0; a < m.group_delay_s.n(); ++a) {
                json row = json::array();
                for (std::size_t b = 0; b < m.group_delay_s.n(); ++b)
                    row.push_back(m.group_delay_s(a, b));
                rows.push_back(std::move(row));
            }
            j["delay_s"] = std::move(rows);
            break;
        }
    }
    return j;
}

Matrix matrix_from_json(const json& rows, const std::string& field) {
    if (!rows.is_array() || rows.empty()) fail(field + " must be a non-empty array of rows");
    const std::size_t n = rows.size();
    Matrix m(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != n)
            fail(field + " row " + std::to_string(i) + " must have " + std::to_string(n) +
                 " entries");
        for (std::size_t j = 0; j < n; ++j) {
            if (!row[j].is_number())
                fail(field + "[" + std::to_string(i) + "][" + std::to_string(j) +
                     "] must be a number");
            m(i, j) = row[j].get<double>();
        }
    }
    return m;
}

DelayModel delay_model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail("delays must be an object with a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    if (type == "fixed_uniform") {
        if (!j.contains("d_s") || !j["d_s"].is_number()) fail("delays.d_s is required for fixed_uniform");
        return DelayModel::fixed_uniform(j["d_s"].get<double>());
    }
    if (type == "explicit_matrix") {
        if (!j.contains("matrix_s")) fail("delays.matrix_s is required for explicit_matrix");
        return DelayModel::explicit_matrix(matrix_from_json(j["matrix_s"], "delays.matrix_s"));
    }
    if (type == "logistic_random") {
        if (!j.contains("mean_s") || !j["mean_s"].is_number())
            fail("delays.mean_s is required for logistic_random");
        const bool symmetric = j.value("symmetric", false);
        const std::uint64_t seed = j.value("seed", std::uint64_t{0});
        return DelayModel::logistic_random(j["mean_s"].get<double>(), symmetric, seed);
    }
    if (type == "grouped_fixed") {
        if (!j.contains("groups") || !j["groups"].is_array())
            fail("delays.groups is required for grouped_fixed");
        if (!j.contains("delay_s")) fail("delays.delay_s is required for grouped_fixed");
        std::vector<int> groups;
        for (const auto& g : j["groups"]) {
            if (!g.is_number_integer()) fail("delays.groups entries must be integers");
            groups.push_back(g.get<int>());
        }
        return DelayModel::grouped_fixed(std::move(groups),
                                         matrix_from_json(j["delay_s"], "delays.delay_s"));
    }
    fail("delays.type must be one of fixed_uniform, explicit_matrix, logistic_random, "
         "grouped_fixed; got \"" + type + "\"");
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("scenario parse failure: ") + e.what());
    }
    if (!j.is_object()) fail("scenario file must contain a JSON object");

    Scenario s;
    if (!j.contains("n_miners") || !j["n_miners"].is_number_integer())
        fail("n_miners (integer) is required");
    const long long n = j["n_miners"].get<long long>();
    if (n < 0) fail("n_miners must be >= 2, got " + std::to_string(n));
    s.n_miners = static_cast<std::size_t>(n);

    if (!j.contains("block_interval_s") || !j["block_interval_s"].is_number())
        fail("block_interval_s (number) is required");
    s.block_interval_s = j["block_interval_s"].get<double>();

    s.tie_break = tie_break_from_string(j.value("tie_break", std::string("first_seen")));

    if (!j.contains("hashrates")) fail("hashrates is required");
    const json& hr = j["hashrates"];
    if (hr.is_array()) {
        for (const auto& a : hr) {
            if (!a.is_number()) fail("hashrates entries must be numbers");
            s.hashrates.push_back(a.get<double>());
        }
    } else if (hr.is_object()) {
        PoolDistributionSpec spec;
        if (!hr.contains("named_shares") || !hr["named_shares"].is_array())
            fail("hashrates.named_shares (array) is required for a pool spec");
        for (const auto& entry : hr["named_shares"]) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
                !entry[1].is_number())
                fail("hashrates.named_shares entries must be [label, share] pairs");
            spec.named_shares.emplace_back(entry[0].get<std::string>(), entry[1].get<double>());
        }
        if (!hr.contains("fill_to") || !hr["fill_to"].is_number_integer())
            fail("hashrates.fill_to (integer) is required for a pool spec");
        const long long fill_to = hr["fill_to"].get<long long>();
        if (fill_to < 0) fail("hashrates.fill_to must be >= 0, got " + std::to_string(fill_to));
        spec.fill_to = static_cast<std::size_t>(fill_to);
        s.hashrates = expand_pool_distribution(spec);
    } else {
        fail("hashrates must be an array of shares or a pool spec object");
    }

    if (!j.contains("delays")) fail("delays is required");
    s.delays = delay_model_from_json(j["delays"]);

    s.validate_and_normalize();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string canonical_scenario_json(const Scenario& scenario) {
    json j;
    j["n_miners"] = scenario.n_miners;
    j["block_interval_s"] = scenario.block_interval_s;
    j["tie_break"] = to_string(scenario.tie_break);
    j["hashrates"] = scenario.hashrates;
    j["delays"] = delay_model_to_json(scenario.delays);
    return j.dump();
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string scenario_fingerprint(const Scenario& scenario) {
    const std::string canonical = canonical_scenario_json(scenario);
    const std::uint64_t h = fnv1a64(canonical.data(), canonical.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace minefair
