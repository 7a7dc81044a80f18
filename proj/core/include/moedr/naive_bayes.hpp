#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moedr/matrix.hpp"

namespace moedr {

struct NaiveBayesParams {
    /// Per-feature variance floor = factor * (training range)^2.
    double variance_floor_factor = 1e-9;
};

/// Gaussian naive Bayes with empirical class priors and unbiased per-class variances.
class GaussianNaiveBayes {
public:
    static GaussianNaiveBayes fit(const Matrix& x, std::span<const int> y, std::size_t class_count,
                                  const NaiveBayesParams& params = {});

    /// log P(class) + sum_j log N(x_j | mean, var); -inf for classes unseen in training.
    std::vector<double> log_joint(std::span<const double> row) const;
    std::vector<double> posterior(std::span<const double> row) const;
    int predict(std::span<const double> row) const;

    std::size_t width() const noexcept { return width_; }
    std::size_t class_count() const noexcept { return log_prior_.size(); }
    double mean(std::size_t cls, std::size_t feature) const { return mean_[cls * width_ + feature]; }
    double variance(std::size_t cls, std::size_t feature) const { return var_[cls * width_ + feature]; }

private:
    std::size_t width_ = 0;
    std::vector<double> log_prior_;
    std::vector<double> mean_;
    std::vector<double> var_;
    /// Features constant over the training set carry no evidence and are skipped.
    std::vector<char> active_;
};

}  // namespace moedr
