#include "moedr/learner.hpp"

#include <algorithm>
#include <stdexcept>

namespace moedr {

LearnerKind LearnerKind::parse(const std::string& name) {
    if (name == "nb" || name == "naive_bayes") return nb();
    if (name == "c45" || name == "c4.5" || name == "tree") return c45();
    if (name == "svm" || name == "linear_svm") return svm_linear();
    throw std::invalid_argument("unknown learner '" + name + "' (expected nb, c45 or svm)");
}

std::string LearnerKind::name() const {
    switch (tag) {
        case LearnerTag::naive_bayes: return "nb";
        case LearnerTag::c45: return "c45";
        case LearnerTag::linear_svm: return "svm";
    }
    return "?";
}

std::size_t TrainedModel::width() const {
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ConstantModel>)
                return m.width;
            else
                return m.width();
        },
        impl_);
}

int TrainedModel::predict_row(std::span<const double> row) const {
    return std::visit(
        [&](const auto& m) -> int {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ConstantModel>)
                return m.label;
            else
                return m.predict(row);
        },
        impl_);
}

TrainedModel train(const LearnerKind& kind, const Matrix& features, std::span<const int> labels,
                   std::size_t class_count, const std::vector<bool>& nominal) {
    if (features.rows() != labels.size())
        throw std::invalid_argument("train: feature rows and labels differ in length");
    if (features.rows() == 0) throw std::invalid_argument("train: empty training set");
    if (features.cols() == 0) throw std::invalid_argument("train: no features");

    const bool single_class = std::all_of(labels.begin(), labels.end(),
                                          [&](int y) { return y == labels.front(); });
    if (single_class) return {kind, ConstantModel{labels.front(), features.cols()}};

    switch (kind.tag) {
        case LearnerTag::naive_bayes:
            return {kind, GaussianNaiveBayes::fit(features, labels, class_count, kind.naive_bayes)};
        case LearnerTag::c45:
            return {kind, DecisionTree::fit(features, labels, class_count, nominal, kind.tree)};
        case LearnerTag::linear_svm:
            return {kind, LinearSvm::fit(features, labels, class_count, kind.svm)};
    }
    throw std::logic_error("train: unhandled learner tag");
}

TrainedModel train(const LearnerKind& kind, const Dataset& dataset) {
    return train(kind, dataset.values, dataset.labels, dataset.class_count(), nominal_flags(dataset));
}

std::vector<int> predict(const TrainedModel& model, const Matrix& features) {
    if (features.cols() != model.width())
        throw std::invalid_argument("predict: model expects " + std::to_string(model.width()) +
                                    " features, got " + std::to_string(features.cols()));
    std::vector<int> out(features.rows());
    for (std::size_t r = 0; r < features.rows(); ++r) out[r] = model.predict_row(features.row(r));
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (predicted.empty()) throw std::invalid_argument("accuracy: empty sequences");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == actual[i];
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

std::vector<bool> nominal_flags(const Dataset& dataset) {
    std::vector<bool> out(dataset.cols());
    for (std::size_t j = 0; j < dataset.cols(); ++j) out[j] = dataset.attributes[j].is_nominal();
    return out;
}

}  // namespace moedr
