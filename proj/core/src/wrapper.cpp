#include "moedr/wrapper.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moedr {

CvResult cross_validate(const Dataset& dataset, const FoldPlan& plan, const LearnerKind& learner) {
    if (plan.assignments.size() != dataset.rows())
        throw std::invalid_argument("cross_validate: fold plan does not match dataset rows");
    const auto nominal = nominal_flags(dataset);
    CvResult res;
    for (std::size_t f = 0; f < plan.k; ++f) {
        const auto test = plan.test_indices(f);
        if (test.empty()) continue;
        const auto train_rows = plan.train_indices(f);
        const Matrix train_x = dataset.values.select_rows(train_rows);
        std::vector<int> train_y;
        train_y.reserve(train_rows.size());
        for (auto r : train_rows) train_y.push_back(dataset.labels[r]);

        const auto model = train(learner, train_x, train_y, dataset.class_count(), nominal);
        const Matrix test_x = dataset.values.select_rows(test);
        std::vector<int> test_y;
        test_y.reserve(test.size());
        for (auto r : test) test_y.push_back(dataset.labels[r]);
        res.fold_accuracy.push_back(moedr::accuracy(predict(model, test_x), test_y));
    }
    const double n = static_cast<double>(res.fold_accuracy.size());
    res.mean = std::accumulate(res.fold_accuracy.begin(), res.fold_accuracy.end(), 0.0) / n;
    if (res.fold_accuracy.size() > 1) {
        double ss = 0.0;
        for (double a : res.fold_accuracy) ss += (a - res.mean) * (a - res.mean);
        res.stddev = std::sqrt(ss / (n - 1.0));
    }
    return res;
}

FoldPlan make_fold_plan(const Dataset& dataset, std::size_t folds, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {0xf01d}));
    return stratified_kfold(dataset.labels, folds, rng);
}

double cv_accuracy(const Dataset& dataset, const DecodedView& view, const WrapperConfig& config) {
    return WrapperFitness(dataset, config).accuracy(view);
}

double error_fitness(const Dataset& dataset, const DecodedView& view, const WrapperConfig& config) {
    return 1.0 - cv_accuracy(dataset, view, config);
}

WrapperFitness::WrapperFitness(const Dataset& dataset, const WrapperConfig& config)
    : dataset_(&dataset), config_(config), plan_(make_fold_plan(dataset, config.folds, config.repetition_seed)) {}

double WrapperFitness::accuracy(const DecodedView& view) const {
    const Dataset reduced = transform(*dataset_, view);
    return cross_validate(reduced, plan_, config_.learner).mean;
}

}  // namespace moedr
