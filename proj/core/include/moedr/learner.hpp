#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "moedr/c45.hpp"
#include "moedr/dataset.hpp"
#include "moedr/linear_svm.hpp"
#include "moedr/matrix.hpp"
#include "moedr/naive_bayes.hpp"

namespace moedr {

enum class LearnerTag { naive_bayes, c45, linear_svm };

struct LearnerKind {
    LearnerTag tag = LearnerTag::naive_bayes;
    NaiveBayesParams naive_bayes;
    TreeParams tree;
    SvmParams svm;

    static LearnerKind nb() { return {LearnerTag::naive_bayes, {}, {}, {}}; }
    static LearnerKind c45() { return {LearnerTag::c45, {}, {}, {}}; }
    static LearnerKind svm_linear() { return {LearnerTag::linear_svm, {}, {}, {}}; }

    /// Accepts "nb", "c45", "svm" (and the long tag names).
    static LearnerKind parse(const std::string& name);
    std::string name() const;
};

/// Always predicts one class (used when a training fold holds a single class).
struct ConstantModel {
    int label = 0;
    std::size_t width = 0;
};

class TrainedModel {
public:
    using Impl = std::variant<ConstantModel, GaussianNaiveBayes, DecisionTree, LinearSvm>;

    TrainedModel(LearnerKind kind, Impl impl) : kind_(kind), impl_(std::move(impl)) {}

    const LearnerKind& kind() const noexcept { return kind_; }
    const Impl& impl() const noexcept { return impl_; }
    bool is_constant() const noexcept { return std::holds_alternative<ConstantModel>(impl_); }
    std::size_t width() const;

    int predict_row(std::span<const double> row) const;

private:
    LearnerKind kind_;
    Impl impl_;
};

/// `nominal` flags columns holding category codes (only the tree uses them).
TrainedModel train(const LearnerKind& kind, const Matrix& features, std::span<const int> labels,
                   std::size_t class_count, const std::vector<bool>& nominal = {});

TrainedModel train(const LearnerKind& kind, const Dataset& dataset);

/// Throws std::invalid_argument on a feature-width mismatch.
std::vector<int> predict(const TrainedModel& model, const Matrix& features);

/// Fraction of positions where the sequences agree. Throws on length mismatch or empty input.
double accuracy(std::span<const int> predicted, std::span<const int> actual);

std::vector<bool> nominal_flags(const Dataset& dataset);

}  // namespace moedr
