#include "moedr/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace moedr {

GaussianNaiveBayes GaussianNaiveBayes::fit(const Matrix& x, std::span<const int> y,
                                           std::size_t class_count, const NaiveBayesParams& params) {
    if (x.rows() != y.size()) throw std::invalid_argument("naive bayes: row/label count mismatch");
    if (x.rows() == 0) throw std::invalid_argument("naive bayes: empty training set");
    GaussianNaiveBayes nb;
    const std::size_t p = x.cols();
    nb.width_ = p;
    nb.mean_.assign(class_count * p, 0.0);
    nb.var_.assign(class_count * p, 0.0);
    nb.active_.assign(p, 1);

    std::vector<std::size_t> count(class_count, 0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto k = static_cast<std::size_t>(y[r]);
        ++count[k];
        for (std::size_t j = 0; j < p; ++j) nb.mean_[k * p + j] += x(r, j);
    }
    for (std::size_t k = 0; k < class_count; ++k)
        if (count[k] > 0)
            for (std::size_t j = 0; j < p; ++j) nb.mean_[k * p + j] /= static_cast<double>(count[k]);

    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto k = static_cast<std::size_t>(y[r]);
        for (std::size_t j = 0; j < p; ++j) {
            const double d = x(r, j) - nb.mean_[k * p + j];
            nb.var_[k * p + j] += d * d;
        }
    }

    std::vector<double> floor(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double lo = x(0, j), hi = x(0, j);
        for (std::size_t r = 1; r < x.rows(); ++r) {
            lo = std::min(lo, x(r, j));
            hi = std::max(hi, x(r, j));
        }
        const double range = hi - lo;
        floor[j] = params.variance_floor_factor * range * range;
        if (range == 0.0) nb.active_[j] = 0;
    }

    const double m = static_cast<double>(x.rows());
    nb.log_prior_.assign(class_count, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < class_count; ++k) {
        if (count[k] == 0) continue;
        nb.log_prior_[k] = std::log(static_cast<double>(count[k]) / m);
        for (std::size_t j = 0; j < p; ++j) {
            auto& v = nb.var_[k * p + j];
            v = count[k] > 1 ? v / static_cast<double>(count[k] - 1) : 0.0;
            v = std::max(v, floor[j]);
        }
    }
    return nb;
}

std::vector<double> GaussianNaiveBayes::log_joint(std::span<const double> row) const {
    if (row.size() != width_) throw std::invalid_argument("naive bayes: feature width mismatch");
    std::vector<double> out(log_prior_);
    const double log_2pi = std::log(2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!std::isfinite(out[k])) continue;
        for (std::size_t j = 0; j < width_; ++j) {
            if (!active_[j]) continue;
            const double v = var_[k * width_ + j];
            const double d = row[j] - mean_[k * width_ + j];
            out[k] += -0.5 * (log_2pi + std::log(v)) - d * d / (2.0 * v);
        }
    }
    return out;
}

std::vector<double> GaussianNaiveBayes::posterior(std::span<const double> row) const {
    auto lj = log_joint(row);
    const double mx = *std::max_element(lj.begin(), lj.end());
    double z = 0.0;
    for (auto& v : lj) {
        v = std::isfinite(v) ? std::exp(v - mx) : 0.0;
        z += v;
    }
    for (auto& v : lj) v /= z;
    return lj;
}

int GaussianNaiveBayes::predict(std::span<const double> row) const {
    const auto lj = log_joint(row);
    std::size_t best = 0;
    for (std::size_t k = 1; k < lj.size(); ++k)
        if (lj[k] > lj[best]) best = k;
    return static_cast<int>(best);
}

}  // namespace moedr
