#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moedr/dataset.hpp"
#include "moedr/encoding.hpp"

namespace moedr {

struct ClassDistribution {
    std::vector<std::size_t> counts;

    ClassDistribution() = default;
    explicit ClassDistribution(std::vector<std::size_t> c) : counts(std::move(c)) {}

    std::size_t total() const noexcept;

    static ClassDistribution of(std::span<const int> labels, std::size_t class_count);
};

/// Shannon entropy in bits. Zero-count classes contribute nothing; an empty
/// distribution has entropy 0.
double class_entropy(const ClassDistribution& dist);

/// Size-weighted mean of the two partition entropies. Throws std::invalid_argument
/// when both partitions are empty.
double split_entropy(const ClassDistribution& s1, const ClassDistribution& s2);

/// Entropy reduction from splitting rows into value > cut and value <= cut.
double info_gain(std::span<const int> labels, std::span<const double> column, double cut,
                 std::size_t class_count);

/// Sum of info_gain over the view's discretized attributes, each at its cut.
double discretization_fitness(const Dataset& dataset, const DecodedView& view);

}  // namespace moedr
