// Python bindings for the minefair engine. Matrices cross the boundary as
// numpy arrays; every operation raises ScenarioError as ValueError and
// ConvergenceError as RuntimeError.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>

#include "minefair/ensemble.hpp"
#include "minefair/fairness.hpp"
#include "minefair/game.hpp"
#include "minefair/rng.hpp"
#include "minefair/scenario.hpp"
#include "minefair/simulator.hpp"
#include "minefair/theory.hpp"
#include "minefair/version.hpp"

namespace py = pybind11;
using namespace minefair;

namespace {

py::array_t<double> to_numpy(const Matrix& m) {
    py::array_t<double> out({m.n(), m.n()});
    std::memcpy(out.mutable_data(), m.data().data(), sizeof(double) * m.n() * m.n());
    return out;
}

Matrix from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
        throw ScenarioError("matrix argument must be square and 2-dimensional");
    Matrix m(static_cast<std::size_t>(arr.shape(0)));
    std::memcpy(m.data().data(), arr.data(), sizeof(double) * m.data().size());
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Round-based mining fairness analysis engine";
    m.attr("__version__") = MINEFAIR_VERSION;

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::enum_<TieBreakRule>(m, "TieBreakRule")
        .value("FIRST_SEEN", TieBreakRule::FirstSeen)
        .value("RANDOM", TieBreakRule::Random)
        .value("LAST_GENERATED", TieBreakRule::LastGenerated);

    py::class_<DelayModel>(m, "DelayModel")
        .def_static("fixed_uniform", &DelayModel::fixed_uniform, py::arg("d_s"))
        .def_static(
            "explicit_matrix",
            [](const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
                return DelayModel::explicit_matrix(from_numpy(arr));
            },
            py::arg("matrix_s"))
        .def_static("logistic_random", &DelayModel::logistic_random, py::arg("mean_s"),
                    py::arg("symmetric") = false, py::arg("seed") = 0)
        .def_static(
            "grouped_fixed",
            [](std::vector<int> groups,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& table) {
                return DelayModel::grouped_fixed(std::move(groups), from_numpy(table));
            },
            py::arg("groups"), py::arg("delay_s"))
        .def_property_readonly("deterministic", &DelayModel::deterministic)
        .def_readonly("seed", &DelayModel::seed);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](std::size_t n_miners, std::vector<double> hashrates,
                         double block_interval_s, const DelayModel& delays, TieBreakRule rule) {
                 Scenario s;
                 s.n_miners = n_miners;
                 s.hashrates = std::move(hashrates);
                 s.block_interval_s = block_interval_s;
                 s.delays = delays;
                 s.tie_break = rule;
                 s.validate_and_normalize();
                 return s;
             }),
             py::arg("n_miners"), py::arg("hashrates"), py::arg("block_interval_s"),
             py::arg("delays"), py::arg("tie_break") = TieBreakRule::FirstSeen)
        .def_readonly("n_miners", &Scenario::n_miners)
        .def_readonly("hashrates", &Scenario::hashrates)
        .def_readonly("block_interval_s", &Scenario::block_interval_s)
        .def_readonly("delays", &Scenario::delays)
        .def_readonly("tie_break", &Scenario::tie_break)
        .def("fingerprint", &scenario_fingerprint);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
    m.def("scenario_fingerprint", &scenario_fingerprint, py::arg("scenario"));

    m.def(
        "expand_pool_distribution",
        [](std::vector<std::pair<std::string, double>> named, std::size_t fill_to) {
            PoolDistributionSpec spec;
            spec.named_shares = std::move(named);
            spec.fill_to = fill_to;
            return expand_pool_distribution(spec);
        },
        py::arg("named_shares"), py::arg("fill_to"));

    m.def(
        "realize_delays",
        [](const DelayModel& model, std::size_t n, std::uint64_t seed) {
            return to_numpy(realize_delays(model, n, seed));
        },
        py::arg("model"), py::arg("n"), py::arg("rng_seed") = 0);

    m.def("derive_child_seed", &derive_child_seed, py::arg("master_seed"), py::arg("index"));

    // fairness engine
    py::class_<RoundInitiation>(m, "RoundInitiation")
        .def_readonly("pi", &RoundInitiation::pi)
        .def_readonly("iterations", &RoundInitiation::iterations)
        .def_readonly("final_delta", &RoundInitiation::final_delta);

    py::class_<FairnessReport>(m, "FairnessReport")
        .def_readonly("alpha", &FairnessReport::alpha)
        .def_readonly("pi", &FairnessReport::pi)
        .def_readonly("reward_share", &FairnessReport::reward_share)
        .def_readonly("mp", &FairnessReport::mp)
        .def_readonly("mpr", &FairnessReport::mpr)
        .def_readonly("scenario_fingerprint", &FairnessReport::scenario_fingerprint);

    m.def(
        "fork_matrix",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& delays,
           double block_interval_s) { return to_numpy(fork_matrix(from_numpy(delays), block_interval_s)); },
        py::arg("delays_s"), py::arg("block_interval_s"));

    m.def(
        "win_matrix",
        [](const Scenario& scenario,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& delays) {
            return to_numpy(win_matrix(scenario, from_numpy(delays)));
        },
        py::arg("scenario"), py::arg("delays_s"));

    m.def(
        "stationary_round_initiation",
        [](const std::vector<double>& alpha,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& fork) {
            return stationary_round_initiation(alpha, from_numpy(fork));
        },
        py::arg("alpha"), py::arg("fork"));

    m.def(
        "reward_shares",
        [](const std::vector<double>& alpha, const std::vector<double>& pi,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& fork,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& win) {
            return reward_shares(alpha, pi, from_numpy(fork), from_numpy(win));
        },
        py::arg("alpha"), py::arg("pi"), py::arg("fork"), py::arg("win"));

    m.def(
        "fairness_report",
        [](const Scenario& scenario, std::optional<std::uint64_t> seed) {
            return fairness_report(scenario, seed);
        },
        py::arg("scenario"), py::arg("seed") = py::none());

    // first-order theory
    py::class_<TheoryPrediction>(m, "TheoryPrediction")
        .def_readonly("fork_rate", &TheoryPrediction::fork_rate)
        .def_readonly("slope", &TheoryPrediction::slope)
        .def_readonly("zero_point", &TheoryPrediction::zero_point)
        .def_readonly("mpr", &TheoryPrediction::mpr)
        .def_readonly("beyond_validated_envelope", &TheoryPrediction::beyond_validated_envelope);

    py::class_<LinearFit>(m, "LinearFit")
        .def_readonly("slope", &LinearFit::slope)
        .def_readonly("zero_point", &LinearFit::zero_point)
        .def_readonly("correlation", &LinearFit::correlation);

    m.def("sum_squared", &sum_squared, py::arg("alpha"));
    m.def("predict_mpr", &predict_mpr, py::arg("alpha"), py::arg("delay_s"),
          py::arg("block_interval_s"));
    m.def("predict_round_initiation", &predict_round_initiation, py::arg("alpha"),
          py::arg("fork_rate"));
    m.def("naive_mpr", &naive_mpr, py::arg("alpha"), py::arg("fork_rate"));
    m.def("fit_mpr_line", &fit_mpr_line, py::arg("report"));
    m.def("zero_point_identity_check", &zero_point_identity_check, py::arg("report"));

    // Monte Carlo simulator
    py::class_<SimResult>(m, "SimResult")
        .def_readonly("rounds", &SimResult::rounds)
        .def_readonly("fork_events", &SimResult::fork_events)
        .def_readonly("total_main_chain_blocks", &SimResult::total_main_chain_blocks)
        .def_readonly("main_chain_blocks", &SimResult::main_chain_blocks)
        .def_readonly("round_initiations", &SimResult::round_initiations)
        .def_readonly("empirical_r", &SimResult::empirical_r)
        .def_readonly("empirical_pi", &SimResult::empirical_pi)
        .def_readonly("r_std_error", &SimResult::r_std_error)
        .def_readonly("pi_std_error", &SimResult::pi_std_error)
        .def_readonly("scenario_fingerprint", &SimResult::scenario_fingerprint);

    m.def(
        "simulate",
        [](const Scenario& scenario, std::uint64_t rounds, std::uint64_t seed, bool race_mode) {
            SimConfig config;
            config.scenario = scenario;
            config.rounds = rounds;
            config.seed = seed;
            config.race_mode = race_mode;
            return simulate(config);
        },
        py::arg("scenario"), py::arg("rounds"), py::arg("seed") = 0,
        py::arg("race_mode") = false);

    m.def("empirical_report", &empirical_report, py::arg("result"), py::arg("alpha"));

    // delay ensemble
    py::class_<EnsembleStats>(m, "EnsembleStats")
        .def_readonly("n_draws", &EnsembleStats::n_draws)
        .def_readonly("mpr_mean", &EnsembleStats::mpr_mean)
        .def_readonly("mpr_std", &EnsembleStats::mpr_std)
        .def_readonly("mpr_fixed_reference", &EnsembleStats::mpr_fixed_reference);

    m.def(
        "run_ensemble",
        [](const Scenario& scenario, std::size_t n_draws, std::uint64_t master_seed) {
            EnsembleConfig config;
            config.scenario = scenario;
            config.n_draws = n_draws;
            config.master_seed = master_seed;
            return run_ensemble(config);
        },
        py::arg("scenario"), py::arg("n_draws"), py::arg("master_seed") = 0);

    m.def("std_vs_hashrate_trend", &std_vs_hashrate_trend, py::arg("stats"), py::arg("alpha"));
    m.def("spearman_rank_correlation", &spearman_rank_correlation, py::arg("x"), py::arg("y"));

    // propagation game
    py::enum_<GroupStrategy>(m, "GroupStrategy")
        .value("SLOW", GroupStrategy::Slow)
        .value("FAST", GroupStrategy::Fast);

    py::enum_<GroupUtilityKind>(m, "GroupUtilityKind")
        .value("GROUP_MPR", GroupUtilityKind::GroupMpr)
        .value("SUM_MP", GroupUtilityKind::SumMp)
        .value("SUM_MPR", GroupUtilityKind::SumMpr);

    py::class_<GroupPartition>(m, "GroupPartition")
        .def_readonly("group_of", &GroupPartition::group_of)
        .def_readonly("large", &GroupPartition::large)
        .def_readonly("small", &GroupPartition::small)
        .def_readonly("large_share", &GroupPartition::large_share)
        .def_readonly("small_share", &GroupPartition::small_share);

    py::class_<GameCell>(m, "GameCell")
        .def_readonly("large_strategy", &GameCell::large_strategy)
        .def_readonly("small_strategy", &GameCell::small_strategy)
        .def_readonly("utility_large", &GameCell::utility_large)
        .def_readonly("utility_small", &GameCell::utility_small)
        .def_readonly("equilibrium", &GameCell::equilibrium);

    py::class_<GameOutcome>(m, "GameOutcome")
        .def_readonly("cells", &GameOutcome::cells)
        .def_readonly("fast_delay_s", &GameOutcome::fast_delay_s)
        .def_readonly("slow_delay_s", &GameOutcome::slow_delay_s)
        .def("cell", &GameOutcome::cell, py::return_value_policy::reference_internal,
             py::arg("large"), py::arg("small"));

    m.def("partition_groups", &partition_groups, py::arg("alpha"));
    m.def(
        "group_delay_matrix",
        [](const GroupPartition& partition, GroupStrategy large, GroupStrategy small,
           double fast_delay_s, double slow_delay_s) {
            return to_numpy(
                group_delay_matrix(partition, large, small, fast_delay_s, slow_delay_s));
        },
        py::arg("partition"), py::arg("large"), py::arg("small"), py::arg("fast_delay_s") = 3.0,
        py::arg("slow_delay_s") = 6.0);
    m.def("solve_game", &solve_game, py::arg("scenario"), py::arg("partition"),
          py::arg("fast_delay_s") = 3.0, py::arg("slow_delay_s") = 6.0,
          py::arg("utility") = GroupUtilityKind::GroupMpr);
}
