// minefair command line: scenario ingestion, analysis commands, CSV/JSON
// emission and plot-data files. Exit codes: 0 success, 1 validation error,
// 2 runtime/convergence error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minefair/ensemble.hpp"
#include "minefair/fairness.hpp"
#include "minefair/game.hpp"
#include "minefair/report_io.hpp"
#include "minefair/rng.hpp"
#include "minefair/simulator.hpp"
#include "minefair/theory.hpp"
#include "minefair/version.hpp"

namespace fs = std::filesystem;
using namespace minefair;

namespace {

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> tie_break;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool scenario_required = true) {
    auto* s = cmd->add_option("--scenario", opt.scenario_path, "Scenario file (JSON)");
    if (scenario_required) s->required();
    cmd->add_option("--out", opt.out_dir, "Output directory (created if absent)");
    cmd->add_option("--seed", opt.seed, "Seed override for randomized delay models");
    cmd->add_option("--tie-break", opt.tie_break,
                    "Override the scenario tie-break rule (first_seen|random|last_generated)");
    cmd->add_option("--format", opt.format, "Table output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

Scenario load(const CommonOptions& opt) {
    Scenario scenario = load_scenario(opt.scenario_path);
    if (opt.tie_break) {
        scenario.tie_break = tie_break_from_string(*opt.tie_break);
    }
    return scenario;
}

fs::path prepare_out_dir(const CommonOptions& opt) {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

RunManifest make_manifest(const std::string& command, const CommonOptions& opt,
                          const Scenario& scenario, int argc, char** argv) {
    RunManifest m;
    m.command = command;
    std::ostringstream line;
    for (int i = 0; i < argc; ++i) line << (i ? " " : "") << argv[i];
    m.command_line = line.str();
    m.scenario_path = opt.scenario_path;
    m.scenario_fingerprint = scenario_fingerprint(scenario);
    if (opt.seed) m.seeds["override"] = *opt.seed;
    if (scenario.delays.kind == DelayModel::Kind::LogisticRandom)
        m.seeds["delay_model"] = scenario.delays.seed;
    return m;
}

TheoryCompareRow compare_at(const Scenario& base, double d_over_t) {
    Scenario scenario = base;
    scenario.delays = DelayModel::fixed_uniform(d_over_t * scenario.block_interval_s);

    TheoryCompareRow row;
    row.d_over_t = d_over_t;
    const TheoryPrediction theory =
        predict_mpr(scenario.hashrates, scenario.delays.fixed_delay_s, scenario.block_interval_s);
    row.slope_theory = theory.slope;
    row.sum_alpha_sq = theory.zero_point;
    if (theory.beyond_validated_envelope)
        std::cerr << "warning: d/T = " << format_double(d_over_t)
                  << " is outside the validated envelope (0.1]\n";

    const FairnessReport report = fairness_report(scenario);
    try {
        const LinearFit fit = fit_mpr_line(report);
        row.slope_numeric = fit.slope;
        row.zero_point_numeric = fit.zero_point;
        row.correlation = fit.correlation;
    } catch (const ScenarioError& e) {
        std::cerr << "warning: " << e.what() << "; row at d/T = " << format_double(d_over_t)
                  << " left degenerate\n";
        row.slope_numeric = 0.0;
        row.zero_point_numeric = std::numeric_limits<double>::quiet_NaN();
        row.correlation = std::numeric_limits<double>::quiet_NaN();
    }
    if (theory.fork_rate == 0.0) {
        // No forks, so the MPR vector is rounding noise and carries no line.
        row.zero_point_numeric = std::numeric_limits<double>::quiet_NaN();
        row.correlation = std::numeric_limits<double>::quiet_NaN();
        std::cerr << "warning: d/T = 0 gives a degenerate sweep row (no forks)\n";
    }
    return row;
}

// Single delay value for theory comparison; randomized models compare at
// their mean.
double scenario_theory_delay(const Scenario& scenario) {
    switch (scenario.delays.kind) {
        case DelayModel::Kind::FixedUniform: return scenario.delays.fixed_delay_s;
        case DelayModel::Kind::LogisticRandom: return scenario.delays.logistic_mean_s;
        default:
            throw ScenarioError(
                "theory comparison needs a fixed_uniform or logistic_random delay model; "
                "explicit matrices have no single d");
    }
}

int cmd_analyze(const CommonOptions& opt, int argc, char** argv) {
    const Scenario scenario = load(opt);
    const fs::path dir = prepare_out_dir(opt);
    const FairnessReport report = fairness_report(scenario, opt.seed);

    RunManifest manifest = make_manifest("analyze", opt, scenario, argc, argv);
    if (opt.format == "json") {
        write_fairness_json(dir / "fairness.json", report);
        manifest.outputs.push_back("fairness.json");
    } else {
        write_fairness_csv(dir / "fairness.csv", report);
        manifest.outputs.push_back("fairness.csv");
    }

    PlotSeries mpr_series{"mpr_vs_alpha", {}};
    for (std::size_t i = 0; i < report.alpha.size(); ++i)
        mpr_series.points.emplace_back(report.alpha[i], report.mpr[i]);
    emit_plot_data(mpr_series, dir / "mpr_vs_alpha.dat");
    manifest.outputs.push_back("mpr_vs_alpha.dat");

    try {
        const double d = scenario_theory_delay(scenario);
        const std::vector<TheoryCompareRow> rows = {
            compare_at(scenario, d / scenario.block_interval_s)};
        write_theory_compare_csv(dir / "theory_compare.csv", rows);
        manifest.outputs.push_back("theory_compare.csv");
        const LinearFit fit = fit_mpr_line(report);
        std::cout << "fit: slope = " << format_double(fit.slope)
                  << ", zero_point = " << format_double(fit.zero_point)
                  << ", correlation = " << format_double(fit.correlation) << '\n';
    } catch (const ScenarioError& e) {
        std::cerr << "note: " << e.what() << '\n';
    }

    write_manifest(dir, manifest);
    std::cout << "analyze: wrote " << manifest.outputs.size() << " files to " << dir.string()
              << " (scenario " << manifest.scenario_fingerprint << ")\n";
    return 0;
}

int cmd_simulate(const CommonOptions& opt, std::uint64_t rounds, bool race_mode, int argc,
                 char** argv) {
    const Scenario scenario = load(opt);
    const fs::path dir = prepare_out_dir(opt);

    SimConfig config;
    config.scenario = scenario;
    config.rounds = rounds;
    config.seed = opt.seed.value_or(scenario.delays.seed);
    config.race_mode = race_mode;
    const SimResult result = simulate(config);
    // The simulator realizes delays with child seed 0; compare against the
    // engine on that same matrix.
    const FairnessReport engine = fairness_report(scenario, derive_child_seed(config.seed, 0));

    RunManifest manifest = make_manifest("simulate", opt, scenario, argc, argv);
    manifest.seeds["simulation"] = config.seed;
    write_sim_csv(dir / "simulation.csv", result, scenario.hashrates);
    manifest.outputs.push_back("simulation.csv");
    write_manifest(dir, manifest);

    double max_z = 0.0;
    for (std::size_t i = 0; i < scenario.n_miners; ++i) {
        if (result.r_std_error[i] == 0.0) continue;
        max_z = std::max(max_z,
                         std::abs(engine.reward_share[i] - result.empirical_r[i]) /
                             result.r_std_error[i]);
    }
    const double fork_rate =
        static_cast<double>(result.fork_events) / static_cast<double>(result.rounds);
    std::cout << "rounds=" << result.rounds << " forks=" << result.fork_events
              << " fork_rate=" << format_double(fork_rate)
              << " max_engine_deviation_se=" << format_double(max_z) << '\n';
    return 0;
}

int cmd_ensemble(const CommonOptions& opt, std::size_t draws, int argc, char** argv) {
    const Scenario scenario = load(opt);
    const fs::path dir = prepare_out_dir(opt);

    EnsembleConfig config;
    config.scenario = scenario;
    config.n_draws = draws;
    config.master_seed = opt.seed.value_or(scenario.delays.seed);
    const EnsembleStats stats = run_ensemble(config);

    RunManifest manifest = make_manifest("ensemble", opt, scenario, argc, argv);
    manifest.seeds["master"] = config.master_seed;
    write_ensemble_csv(dir / "ensemble.csv", stats, scenario.hashrates);
    manifest.outputs.push_back("ensemble.csv");

    PlotSeries mean_series{"mpr_mean_vs_alpha", {}};
    PlotSeries fixed_series{"mpr_fixed_vs_alpha", {}};
    PlotSeries std_series{"mpr_std_vs_alpha", {}};
    for (std::size_t i = 0; i < scenario.n_miners; ++i) {
        mean_series.points.emplace_back(scenario.hashrates[i], stats.mpr_mean[i]);
        fixed_series.points.emplace_back(scenario.hashrates[i], stats.mpr_fixed_reference[i]);
        std_series.points.emplace_back(scenario.hashrates[i], stats.mpr_std[i]);
    }
    emit_plot_data(mean_series, dir / "mpr_mean_vs_alpha.dat");
    emit_plot_data(fixed_series, dir / "mpr_fixed_vs_alpha.dat");
    emit_plot_data(std_series, dir / "mpr_std_vs_alpha.dat");
    manifest.outputs.insert(manifest.outputs.end(),
                            {"mpr_mean_vs_alpha.dat", "mpr_fixed_vs_alpha.dat",
                             "mpr_std_vs_alpha.dat"});
    write_manifest(dir, manifest);

    if (scenario.n_miners >= 10)
        std::cout << "std-vs-hashrate spearman = "
                  << format_double(std_vs_hashrate_trend(stats, scenario.hashrates)) << '\n';
    std::cout << "ensemble: " << draws << " draws written to " << dir.string() << '\n';
    return 0;
}

GroupUtilityKind utility_from_string(const std::string& name) {
    if (name == "group_mpr") return GroupUtilityKind::GroupMpr;
    if (name == "sum_mp") return GroupUtilityKind::SumMp;
    if (name == "sum_mpr") return GroupUtilityKind::SumMpr;
    throw ScenarioError("--utility must be one of group_mpr, sum_mp, sum_mpr; got \"" + name +
                        "\"");
}

int cmd_game(const CommonOptions& opt, double fast_d, double slow_d, const std::string& utility,
             int argc, char** argv) {
    const Scenario scenario = load(opt);
    const fs::path dir = prepare_out_dir(opt);

    const GroupPartition partition = partition_groups(scenario.hashrates);
    const GameOutcome outcome =
        solve_game(scenario, partition, fast_d, slow_d, utility_from_string(utility));

    RunManifest manifest = make_manifest("game", opt, scenario, argc, argv);
    write_game_csv(dir / "game.csv", outcome);
    manifest.outputs.push_back("game.csv");
    const std::string table = game_text_table(outcome);
    {
        std::ofstream txt(dir / "game.txt", std::ios::binary);
        txt << table;
    }
    manifest.outputs.push_back("game.txt");
    write_manifest(dir, manifest);

    std::cout << "large group: " << partition.large.size() << " miners, share "
              << format_double(partition.large_share) << '\n';
    std::cout << table;
    return 0;
}

int cmd_theory_compare(const CommonOptions& opt, int argc, char** argv) {
    const Scenario scenario = load(opt);
    const fs::path dir = prepare_out_dir(opt);
    const double d = scenario_theory_delay(scenario);
    const std::vector<TheoryCompareRow> rows = {compare_at(scenario, d / scenario.block_interval_s)};

    RunManifest manifest = make_manifest("theory-compare", opt, scenario, argc, argv);
    write_theory_compare_csv(dir / "theory_compare.csv", rows);
    manifest.outputs.push_back("theory_compare.csv");
    write_manifest(dir, manifest);

    std::cout << "theory slope " << format_double(rows[0].slope_theory) << " vs numeric "
              << format_double(rows[0].slope_numeric) << '\n';
    return 0;
}

int cmd_sweep(const CommonOptions& opt, const std::vector<double>& dt_list, int argc, char** argv) {
    if (dt_list.empty()) throw ScenarioError("--dt-list must contain at least one d/T value");
    for (double dt : dt_list)
        if (dt < 0.0) throw ScenarioError("d/T values must be >= 0, got " + format_double(dt));

    const Scenario scenario = load(opt);
    const fs::path dir = prepare_out_dir(opt);

    std::vector<TheoryCompareRow> rows;
    rows.reserve(dt_list.size());
    for (double dt : dt_list) rows.push_back(compare_at(scenario, dt));

    RunManifest manifest = make_manifest("sweep", opt, scenario, argc, argv);
    write_theory_compare_csv(dir / "sweep.csv", rows);
    manifest.outputs.push_back("sweep.csv");
    write_manifest(dir, manifest);

    std::cout << "sweep: " << rows.size() << " rows written to " << (dir / "sweep.csv").string()
              << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-based mining fairness analysis"};
    app.set_version_flag("--version", MINEFAIR_VERSION);
    app.require_subcommand(1);

    CommonOptions analyze_opt, simulate_opt, ensemble_opt, game_opt, theory_opt, sweep_opt;

    auto* analyze = app.add_subcommand("analyze", "Exact per-miner fairness report");
    add_common(analyze, analyze_opt);

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo round simulation");
    add_common(simulate_cmd, simulate_opt);
    std::uint64_t rounds = 1000000;
    bool race_mode = false;
    simulate_cmd->add_option("--rounds", rounds, "Number of rounds to simulate");
    simulate_cmd->add_flag("--race-mode", race_mode,
                           "Resolve first-seen forks by replaying the propagation race");

    auto* ensemble = app.add_subcommand("ensemble", "Ensemble over randomized delay draws");
    add_common(ensemble, ensemble_opt);
    std::size_t draws = 100;
    ensemble->add_option("--draws", draws, "Number of delay realizations");

    auto* game = app.add_subcommand("game", "Two-group propagation strategy game");
    add_common(game, game_opt);
    double fast_d = 3.0, slow_d = 6.0;
    std::string utility = "group_mpr";
    game->add_option("--fast-d", fast_d, "Intra-group delay when playing fast (s)");
    game->add_option("--slow-d", slow_d, "Delay everywhere else (s)");
    game->add_option("--utility", utility,
                     "Group utility aggregation (group_mpr|sum_mp|sum_mpr)");

    auto* theory = app.add_subcommand("theory-compare",
                                      "First-order theory vs engine at the scenario's delay");
    add_common(theory, theory_opt);

    auto* sweep = app.add_subcommand("sweep", "Theory-vs-engine table over a d/T list");
    add_common(sweep, sweep_opt);
    std::vector<double> dt_list;
    sweep->add_option("--dt-list", dt_list, "Comma-separated d/T values")
        ->delimiter(',')
        ->required();

    try {
        app.parse(argc, argv);
        if (*analyze) return cmd_analyze(analyze_opt, argc, argv);
        if (*simulate_cmd) return cmd_simulate(simulate_opt, rounds, race_mode, argc, argv);
        if (*ensemble) return cmd_ensemble(ensemble_opt, draws, argc, argv);
        if (*game) return cmd_game(game_opt, fast_d, slow_d, utility, argc, argv);
        if (*theory) return cmd_theory_compare(theory_opt, argc, argv);
        if (*sweep) return cmd_sweep(sweep_opt, dt_list, argc, argv);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
