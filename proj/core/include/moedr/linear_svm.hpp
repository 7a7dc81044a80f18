#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moedr/matrix.hpp"

namespace moedr {

struct SvmParams {
    double regularization = 1.0;
    std::size_t max_epochs = 1000;
    /// Stop when the projected-gradient spread of an epoch falls below this.
    double tolerance = 1e-3;
    /// Z-score features with training statistics before fitting.
    bool standardize = true;
};

/// Hinge-loss linear SVM solved in the dual by cyclic coordinate descent, with the
/// bias carried as an extra constant feature. Multiclass is one-vs-rest with the
/// largest margin score winning; two-class problems use a single machine.
class LinearSvm {
public:
    static LinearSvm fit(const Matrix& x, std::span<const int> y, std::size_t class_count,
                         const SvmParams& params = {});

    /// Per-class margin score; classes absent from training score -inf.
    std::vector<double> scores(std::span<const double> row) const;
    int predict(std::span<const double> row) const;

    std::size_t width() const noexcept { return width_; }
    /// Epochs used by the slowest binary machine.
    std::size_t epochs_used() const noexcept { return epochs_used_; }

private:
    struct Machine {
        std::vector<double> w;  // width_ + 1, bias last
    };

    static Machine train_binary(const Matrix& z, std::span<const signed char> sign,
                                const SvmParams& params, std::size_t& epochs);
    double margin(const Machine& m, std::span<const double> row) const;

    std::size_t width_ = 0;
    std::size_t class_count_ = 0;
    std::vector<double> center_;
    std::vector<double> scale_;
    /// Classes seen in training; with exactly two, one machine scores present_[0] positive.
    std::vector<int> present_;
    std::vector<Machine> machines_;
    std::size_t epochs_used_ = 0;
};

}  // namespace moedr
