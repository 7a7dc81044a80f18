#include "moedr/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace moedr {

LinearSvm LinearSvm::fit(const Matrix& x, std::span<const int> y, std::size_t class_count,
                         const SvmParams& params) {
    if (x.rows() != y.size()) throw std::invalid_argument("svm: row/label count mismatch");
    if (x.rows() == 0) throw std::invalid_argument("svm: empty training set");
    LinearSvm svm;
    const std::size_t m = x.rows();
    const std::size_t p = x.cols();
    svm.width_ = p;
    svm.class_count_ = class_count;
    svm.center_.assign(p, 0.0);
    svm.scale_.assign(p, 1.0);
    if (params.standardize) {
        for (std::size_t j = 0; j < p; ++j) {
            double mean = 0.0;
            for (std::size_t r = 0; r < m; ++r) mean += x(r, j);
            mean /= static_cast<double>(m);
            double ss = 0.0;
            for (std::size_t r = 0; r < m; ++r) ss += (x(r, j) - mean) * (x(r, j) - mean);
            const double sd = std::sqrt(ss / static_cast<double>(m));
            svm.center_[j] = mean;
            svm.scale_[j] = sd > 0.0 ? sd : 1.0;
        }
    }
    Matrix z(m, p + 1);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < p; ++j) z(r, j) = (x(r, j) - svm.center_[j]) / svm.scale_[j];
        z(r, p) = 1.0;
    }

    std::vector<char> seen(class_count, 0);
    for (int c : y) seen[static_cast<std::size_t>(c)] = 1;
    for (std::size_t k = 0; k < class_count; ++k)
        if (seen[k]) svm.present_.push_back(static_cast<int>(k));

    if (svm.present_.size() < 2) return svm;

    std::vector<signed char> sign(m);
    if (svm.present_.size() == 2) {
        for (std::size_t r = 0; r < m; ++r) sign[r] = y[r] == svm.present_[0] ? 1 : -1;
        std::size_t epochs = 0;
        svm.machines_.push_back(train_binary(z, sign, params, epochs));
        svm.epochs_used_ = epochs;
        return svm;
    }
    for (int k : svm.present_) {
        for (std::size_t r = 0; r < m; ++r) sign[r] = y[r] == k ? 1 : -1;
        std::size_t epochs = 0;
        svm.machines_.push_back(train_binary(z, sign, params, epochs));
        svm.epochs_used_ = std::max(svm.epochs_used_, epochs);
    }
    return svm;
}

LinearSvm::Machine LinearSvm::train_binary(const Matrix& z, std::span<const signed char> sign,
                                           const SvmParams& params, std::size_t& epochs) {
    const std::size_t m = z.rows();
    const std::size_t d = z.cols();
    const double c = params.regularization;
    Machine out;
    out.w.assign(d, 0.0);
    std::vector<double> alpha(m, 0.0);
    std::vector<double> qii(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = z.row(i);
        for (double v : row) qii[i] += v * v;
    }

    epochs = 0;
    for (std::size_t epoch = 0; epoch < params.max_epochs; ++epoch) {
        ++epochs;
        double pg_max = -std::numeric_limits<double>::infinity();
        double pg_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const auto row = z.row(i);
            const double yi = sign[i];
            double g = 0.0;
            for (std::size_t j = 0; j < d; ++j) g += out.w[j] * row[j];
            g = yi * g - 1.0;

            double pg = g;
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= c)
                pg = std::max(g, 0.0);
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);

            if (std::abs(pg) > 1e-12 && qii[i] > 0.0) {
                const double old = alpha[i];
                alpha[i] = std::clamp(old - g / qii[i], 0.0, c);
                const double delta = (alpha[i] - old) * yi;
                for (std::size_t j = 0; j < d; ++j) out.w[j] += delta * row[j];
            }
        }
        if (pg_max - pg_min < params.tolerance) break;
    }
    return out;
}

double LinearSvm::margin(const Machine& m, std::span<const double> row) const {
    double s = m.w[width_];
    for (std::size_t j = 0; j < width_; ++j) s += m.w[j] * (row[j] - center_[j]) / scale_[j];
    return s;
}

std::vector<double> LinearSvm::scores(std::span<const double> row) const {
    if (row.size() != width_) throw std::invalid_argument("svm: feature width mismatch");
    std::vector<double> out(class_count_, -std::numeric_limits<double>::infinity());
    if (present_.size() == 1) {
        out[static_cast<std::size_t>(present_[0])] = 0.0;
    } else if (present_.size() == 2) {
        const double s = margin(machines_.front(), row);
        out[static_cast<std::size_t>(present_[0])] = s;
        out[static_cast<std::size_t>(present_[1])] = -s;
    } else {
        for (std::size_t i = 0; i < present_.size(); ++i)
            out[static_cast<std::size_t>(present_[i])] = margin(machines_[i], row);
    }
    return out;
}

int LinearSvm::predict(std::span<const double> row) const {
    const auto s = scores(row);
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] > s[best]) best = k;
    return static_cast<int>(best);
}

}  // namespace moedr
