#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moedr/dataset.hpp"
#include "moedr/encoding.hpp"
#include "moedr/learner.hpp"

namespace moedr {

struct WrapperConfig {
    LearnerKind learner = LearnerKind::c45();
    std::size_t folds = 10;
    std::uint64_t repetition_seed = 0;
};

struct CvResult {
    double mean = 0.0;
    /// Sample standard deviation across folds (0 for a single fold).
    double stddev = 0.0;
    std::vector<double> fold_accuracy;
};

/// Trains on every fold complement and scores the held-out fold.
CvResult cross_validate(const Dataset& dataset, const FoldPlan& plan, const LearnerKind& learner);

/// Stratified fold plan drawn from `seed`; identical for identical labels, k and seed.
FoldPlan make_fold_plan(const Dataset& dataset, std::size_t folds, std::uint64_t seed);

/// Mean fold accuracy of the wrapper learner on the transformed dataset.
/// Throws InfeasibleError for an empty selection.
double cv_accuracy(const Dataset& dataset, const DecodedView& view, const WrapperConfig& config);

/// 1 - cv_accuracy.
double error_fitness(const Dataset& dataset, const DecodedView& view, const WrapperConfig& config);

/// Wrapper objective bound to one dataset and one fold plan, so every
/// individual in an optimization run is scored on the same folds.
class WrapperFitness {
public:
    WrapperFitness(const Dataset& dataset, const WrapperConfig& config);

    double accuracy(const DecodedView& view) const;
    double error(const DecodedView& view) const { return 1.0 - accuracy(view); }

    const FoldPlan& plan() const noexcept { return plan_; }
    const Dataset& dataset() const noexcept { return *dataset_; }
    const WrapperConfig& config() const noexcept { return config_; }

private:
    const Dataset* dataset_;
    WrapperConfig config_;
    FoldPlan plan_;
};

}  // namespace moedr
