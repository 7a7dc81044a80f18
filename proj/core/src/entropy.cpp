#include "moedr/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moedr {

std::size_t ClassDistribution::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

ClassDistribution ClassDistribution::of(std::span<const int> labels, std::size_t class_count) {
    ClassDistribution d;
    d.counts.assign(class_count, 0);
    for (int y : labels) ++d.counts[static_cast<std::size_t>(y)];
    return d;
}

double class_entropy(const ClassDistribution& dist) {
    const auto total = dist.total();
    if (total == 0) return 0.0;
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (auto c : dist.counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

double split_entropy(const ClassDistribution& s1, const ClassDistribution& s2) {
    const double n1 = static_cast<double>(s1.total());
    const double n2 = static_cast<double>(s2.total());
    if (n1 + n2 == 0.0) throw std::invalid_argument("split_entropy: both partitions are empty");
    return (n1 * class_entropy(s1) + n2 * class_entropy(s2)) / (n1 + n2);
}

double info_gain(std::span<const int> labels, std::span<const double> column, double cut,
                 std::size_t class_count) {
    if (labels.size() != column.size()) throw std::invalid_argument("info_gain: length mismatch");
    ClassDistribution above(std::vector<std::size_t>(class_count, 0));
    ClassDistribution below(std::vector<std::size_t>(class_count, 0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto& side = column[i] > cut ? above : below;
        ++side.counts[static_cast<std::size_t>(labels[i])];
    }
    ClassDistribution all(std::vector<std::size_t>(class_count, 0));
    for (std::size_t k = 0; k < class_count; ++k) all.counts[k] = above.counts[k] + below.counts[k];
    // Rounding can push a no-information split a hair below zero.
    return std::max(0.0, class_entropy(all) - split_entropy(above, below));
}

double discretization_fitness(const Dataset& dataset, const DecodedView& view) {
    double fit = 0.0;
    for (const auto& [idx, cut] : view.discretized) {
        const auto col = dataset.values.column(idx);
        fit += info_gain(dataset.labels, col, cut, dataset.class_count());
    }
    return fit;
}

}  // namespace moedr
