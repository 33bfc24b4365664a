#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minefair/ensemble.hpp"
#include "minefair/fairness.hpp"
#include "minefair/game.hpp"
#include "minefair/simulator.hpp"
#include "minefair/theory.hpp"

namespace minefair {

// Locale-independent shortest-faithful formatting at 12 significant digits;
// all emitted numbers go through this so identical inputs give byte-identical
// output files.
std::string format_double(double value);

// One comparison row: first-order theory vs the fitted engine line.
struct TheoryCompareRow {
    double d_over_t = 0.0;
    double slope_theory = 0.0;
    double slope_numeric = 0.0;
    double zero_point_numeric = 0.0;
    double sum_alpha_sq = 0.0;
    double correlation = 0.0;
};

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

void write_fairness_csv(const std::filesystem::path& path, const FairnessReport& report);
void write_fairness_json(const std::filesystem::path& path, const FairnessReport& report);

void write_theory_compare_csv(const std::filesystem::path& path,
                              const std::vector<TheoryCompareRow>& rows);

void write_sim_csv(const std::filesystem::path& path, const SimResult& result,
                   const std::vector<double>& alpha);

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleStats& stats,
                        const std::vector<double>& alpha);

void write_game_csv(const std::filesystem::path& path, const GameOutcome& outcome);
std::string game_text_table(const GameOutcome& outcome);

// Two-column whitespace-delimited plot data, sorted by x. Empty series and
// I/O failures throw with the path in the message.
void emit_plot_data(const PlotSeries& series, const std::filesystem::path& path);

// Written alongside every output set: tool version, scenario fingerprint,
// seeds, command line, creation timestamp.
struct RunManifest {
    std::string command;
    std::string command_line;
    std::string scenario_path;
    std::string scenario_fingerprint;
    std::map<std::string, std::uint64_t> seeds;
    std::vector<std::string> outputs;
};

void write_manifest(const std::filesystem::path& directory, const RunManifest& manifest);

} // namespace minefair
