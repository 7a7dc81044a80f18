#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "moedr/matrix.hpp"

namespace moedr {

struct TreeParams {
    /// Confidence factor for pessimistic-error pruning.
    double confidence = 0.25;
    /// Minimum training rows per branch of a split.
    std::size_t min_leaf = 2;
    bool prune = true;
};

/// A candidate test at a node. Continuous attributes split on `value <= threshold`
/// (branch 0) versus `> threshold` (branch 1); nominal attributes branch on code.
struct SplitChoice {
    std::size_t attribute = 0;
    bool nominal = false;
    double threshold = 0.0;
    std::size_t branches = 2;
    double gain = 0.0;
    double gain_ratio = 0.0;
};

/// Split chosen by the tree builder for the given rows: every attribute's best test
/// (continuous: maximal-gain midpoint threshold), filtered to tests whose gain is at
/// least the mean gain of all valid tests, then the maximal gain ratio wins.
/// Ties go to the lower attribute index. nullopt when no valid split exists.
std::optional<SplitChoice> choose_split(const Matrix& x, std::span<const int> y,
                                        std::span<const std::size_t> rows,
                                        std::size_t class_count, const std::vector<bool>& nominal,
                                        const TreeParams& params);

/// Upper-bound error count at `confidence` for e errors among n cases (Quinlan's estimate).
double pessimistic_extra_errors(double n, double e, double confidence);

/// C4.5-style decision tree: gain-ratio splits, binary thresholds on continuous
/// attributes, multiway branches on nominal ones, error-based subtree replacement.
class DecisionTree {
public:
    struct Node {
        bool leaf = true;
        int label = 0;
        std::vector<double> class_counts;
        std::size_t attribute = 0;
        bool nominal = false;
        double threshold = 0.0;
        /// Indices into nodes_; nominal branch i handles code i.
        std::vector<std::size_t> children;
    };

    static DecisionTree fit(const Matrix& x, std::span<const int> y, std::size_t class_count,
                            const std::vector<bool>& nominal = {}, const TreeParams& params = {});

    int predict(std::span<const double> row) const;

    std::size_t width() const noexcept { return width_; }
    /// Reachable node count after pruning.
    std::size_t node_count() const;
    std::size_t unpruned_node_count() const noexcept { return unpruned_nodes_; }
    std::size_t depth() const;
    const Node& root() const { return nodes_.front(); }
    const Node& node(std::size_t i) const { return nodes_[i]; }
    /// Training row count of every reachable leaf.
    std::vector<double> leaf_sizes() const;

private:
    std::size_t grow(const Matrix& x, std::span<const int> y, std::vector<std::size_t> rows,
                     const std::vector<bool>& nominal, const TreeParams& params,
                     std::span<const double> parent_counts);
    double prune(std::size_t index, double confidence);

    std::size_t width_ = 0;
    std::size_t class_count_ = 0;
    std::size_t unpruned_nodes_ = 0;
    std::vector<Node> nodes_;
};

}  // namespace moedr
