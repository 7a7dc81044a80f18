#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moedr/dataset.hpp"
#include "moedr/encoding.hpp"
#include "moedr/learner.hpp"
#include "moedr/nsga2.hpp"
#include "moedr/wrapper.hpp"

namespace moedr {

struct ExperimentConfig {
    std::filesystem::path data_path;
    LoadOptions load;
    LearnerKind learner = LearnerKind::nb();
    /// nullopt: the wrapper uses the evaluated learner.
    std::optional<LearnerKind> wrapper;
    std::size_t runs = 10;
    std::size_t folds = 10;
    std::size_t wrapper_folds = 10;
    EngineConfig engine;
    std::uint64_t seed = 1;
    /// Empty: nothing is written.
    std::filesystem::path out_dir;
    bool emit_front = false;
    bool log_generations = false;
    /// Report the wrapper's CV score of the chosen solution instead of re-evaluating it.
    bool report_wrapper_score = false;

    void validate() const;
    LearnerKind wrapper_learner() const { return wrapper.value_or(learner); }
};

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double baseline_accuracy = 0.0;
    double baseline_fold_std = 0.0;
    double proposed_accuracy = 0.0;
    double proposed_fold_std = 0.0;
    /// 1 - f2 of the chosen solution.
    double wrapper_accuracy = 0.0;
    double gain = 0.0;
    std::size_t selected = 0;
    std::size_t discretized = 0;
    std::size_t front_count = 0;
    std::size_t generations_run = 0;
    StopReason stop = StopReason::generations;
    DecodedView best_view;
};

struct RunReport {
    std::string dataset;
    std::size_t features = 0;
    std::string learner;
    std::string wrapper;
    std::vector<RunRecord> runs;

    double baseline_mean = 0.0;
    double baseline_std = 0.0;
    double proposed_mean = 0.0;
    double proposed_std = 0.0;
    double mean_selected = 0.0;
    double mean_discretized = 0.0;
    double mean_fronts = 0.0;

    /// Fills the aggregate fields from `runs` (sample std over runs).
    void aggregate();
};

struct ParetoRow {
    std::size_t rank = 0;
    double gain = 0.0;
    double error = 0.0;
    std::size_t selected = 0;
    std::size_t discretized = 0;
};

struct ParetoExport {
    std::size_t run = 0;
    std::vector<ParetoRow> rows;
};

struct ExperimentResult {
    RunReport report;
    std::vector<ParetoExport> fronts;
};

/// Index (into `front1`) of the lowest-error member; ties prefer larger gain, then
/// fewer selected features, then the earlier index.
std::size_t select_best_solution(std::span<const Individual> front1);

/// k-fold accuracy of `learner` on the dataset transformed by `view`.
CvResult evaluate_final(const Dataset& dataset, const DecodedView& view, const LearnerKind& learner,
                        std::size_t folds, std::uint64_t seed);

ParetoExport make_pareto_export(const EvolveResult& result, std::size_t run,
                                const std::vector<bool>& nominal = {});

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset);

/// Header and the nine-field summary row (Table 3 column layout).
std::string summary_header();
std::string summary_row(const RunReport& report);
std::string report_json(const RunReport& report);
std::string pareto_csv(const ParetoExport& pareto);

/// Writes summary.csv and report.json into `dir`, creating it if needed.
void emit_report(const RunReport& report, const std::filesystem::path& dir);

/// Seeds used by run `run`: engine, wrapper folds, and outer evaluation folds.
struct RunSeeds {
    std::uint64_t engine;
    std::uint64_t wrapper;
    std::uint64_t outer;
};
RunSeeds run_seeds(std::uint64_t master, std::size_t run);

}  // namespace moedr
