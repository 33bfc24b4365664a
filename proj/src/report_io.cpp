#include "minefair/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minefair/version.hpp"

namespace minefair {

using nlohmann::json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

} // namespace

void write_fairness_csv(const std::filesystem::path& path, const FairnessReport& report) {
    std::ofstream out = open_out(path);
    out << "miner_id,alpha,pi,reward_share,mp,mpr\n";
    for (std::size_t i = 0; i < report.alpha.size(); ++i) {
        out << i << ',' << format_double(report.alpha[i]) << ',' << format_double(report.pi[i])
            << ',' << format_double(report.reward_share[i]) << ',' << format_double(report.mp[i])
            << ',' << format_double(report.mpr[i]) << '\n';
    }
}

void write_fairness_json(const std::filesystem::path& path, const FairnessReport& report) {
    json j;
    j["scenario_fingerprint"] = report.scenario_fingerprint;
    j["alpha"] = report.alpha;
    j["pi"] = report.pi;
    j["reward_share"] = report.reward_share;
    j["mp"] = report.mp;
    j["mpr"] = report.mpr;
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_theory_compare_csv(const std::filesystem::path& path,
                              const std::vector<TheoryCompareRow>& rows) {
    std::ofstream out = open_out(path);
    out << "d_over_T,slope_theory,slope_numeric,zero_point_numeric,sum_alpha_sq,correlation\n";
    for (const TheoryCompareRow& r : rows) {
        out << format_double(r.d_over_t) << ',' << format_double(r.slope_theory) << ','
            << format_double(r.slope_numeric) << ',' << format_double(r.zero_point_numeric) << ','
            << format_double(r.sum_alpha_sq) << ',' << format_double(r.correlation) << '\n';
    }
}

void write_sim_csv(const std::filesystem::path& path, const SimResult& result,
                   const std::vector<double>& alpha) {
    std::ofstream out = open_out(path);
    out << "miner_id,alpha,round_initiations,main_chain_blocks,pi_emp,r_emp,r_se,mp_emp,mpr_emp\n";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double mp = result.empirical_r[i] - alpha[i];
        out << i << ',' << format_double(alpha[i]) << ',' << result.round_initiations[i] << ','
            << result.main_chain_blocks[i] << ',' << format_double(result.empirical_pi[i]) << ','
            << format_double(result.empirical_r[i]) << ',' << format_double(result.r_std_error[i])
            << ',' << format_double(mp) << ',' << format_double(mp / alpha[i]) << '\n';
    }
}

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleStats& stats,
                        const std::vector<double>& alpha) {
    std::ofstream out = open_out(path);
    out << "miner_id,alpha,mpr_mean,mpr_std,mpr_fixed_reference\n";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        out << i << ',' << format_double(alpha[i]) << ',' << format_double(stats.mpr_mean[i])
            << ',' << format_double(stats.mpr_std[i]) << ','
            << format_double(stats.mpr_fixed_reference[i]) << '\n';
    }
}

void write_game_csv(const std::filesystem::path& path, const GameOutcome& outcome) {
    std::ofstream out = open_out(path);
    out << "large_strategy,small_strategy,utility_large,utility_small,equilibrium\n";
    for (const GameCell& c : outcome.cells) {
        out << to_string(c.large_strategy) << ',' << to_string(c.small_strategy) << ','
            << format_double(c.utility_large) << ',' << format_double(c.utility_small) << ','
            << (c.equilibrium ? 1 : 0) << '\n';
    }
}

std::string game_text_table(const GameOutcome& outcome) {
    auto cell_text = [](const GameCell& c) {
        std::string s = "(" + format_double(c.utility_large) + ", " +
                        format_double(c.utility_small) + ")";
        if (c.equilibrium) s += " EQ";
        return s;
    };
    const GameCell& ss = outcome.cell(GroupStrategy::Slow, GroupStrategy::Slow);
    const GameCell& sf = outcome.cell(GroupStrategy::Slow, GroupStrategy::Fast);
    const GameCell& fs = outcome.cell(GroupStrategy::Fast, GroupStrategy::Slow);
    const GameCell& ff = outcome.cell(GroupStrategy::Fast, GroupStrategy::Fast);

    const std::string c00 = cell_text(ss), c01 = cell_text(sf);
    const std::string c10 = cell_text(fs), c11 = cell_text(ff);
    const std::size_t w0 = std::max(c00.size(), c10.size());
    const std::size_t w1 = std::max(c01.size(), c11.size());

    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };

    std::ostringstream out;
    out << "payoff (large, small); rows = large strategy, cols = small strategy\n";
    out << "fast d = " << format_double(outcome.fast_delay_s)
        << " s, slow d = " << format_double(outcome.slow_delay_s) << " s\n";
    out << "             small:slow" << std::string(w0 > 10 ? w0 - 10 : 0, ' ')
        << "  small:fast\n";
    out << "large:slow   " << pad(c00, w0) << "  " << pad(c01, w1) << '\n';
    out << "large:fast   " << pad(c10, w0) << "  " << pad(c11, w1) << '\n';
    return out.str();
}

void emit_plot_data(const PlotSeries& series, const std::filesystem::path& path) {
    if (series.points.empty())
        throw std::runtime_error("empty plot series \"" + series.label + "\" for " + path.string());
    std::vector<std::pair<double, double>> points = series.points;
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ofstream out = open_out(path);
    for (const auto& [x, y] : points) out << format_double(x) << ' ' << format_double(y) << '\n';
}

void write_manifest(const std::filesystem::path& directory, const RunManifest& manifest) {
    json j;
    j["tool"] = "minefair";
    j["version"] = MINEFAIR_VERSION;
    j["command"] = manifest.command;
    j["command_line"] = manifest.command_line;
    j["scenario_path"] = manifest.scenario_path;
    j["scenario_fingerprint"] = manifest.scenario_fingerprint;
    j["seeds"] = manifest.seeds;
    j["outputs"] = manifest.outputs;

    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    j["created_utc"] = stamp;

    std::ofstream out = open_out(directory / "manifest.json");
    out << j.dump(2) << '\n';
}

} // namespace minefair
