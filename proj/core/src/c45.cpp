#include "moedr/c45.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moedr {

namespace {

constexpr double kEpsilon = 1e-10;

double entropy_of(std::span<const double> counts) {
    const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
    if (n <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : counts)
        if (c > 0.0) h -= (c / n) * std::log2(c / n);
    return h;
}

/// Split information (entropy of the branch sizes).
double split_info(std::span<const double> branch_sizes) { return entropy_of(branch_sizes); }

int majority(std::span<const double> counts) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k)
        if (counts[k] > counts[best]) best = k;
    return static_cast<int>(best);
}

std::vector<double> count_classes(std::span<const int> y, std::span<const std::size_t> rows,
                                  std::size_t class_count) {
    std::vector<double> c(class_count, 0.0);
    for (auto r : rows) c[static_cast<std::size_t>(y[r])] += 1.0;
    return c;
}

/// z-score for the one-sided upper confidence limit; interpolated the way C4.5 does.
double confidence_deviation(double cf) {
    static constexpr std::array<double, 9> val{0, 0.001, 0.005, 0.01, 0.05, 0.10, 0.20, 0.40, 1.00};
    static constexpr std::array<double, 9> dev{4.0, 3.09, 2.58, 2.33, 1.65, 1.28, 0.84, 0.25, 0.00};
    std::size_t i = 0;
    while (i + 1 < val.size() && cf > val[i]) ++i;
    if (i == 0) return dev[0];
    return dev[i - 1] + (dev[i] - dev[i - 1]) * (cf - val[i - 1]) / (val[i] - val[i - 1]);
}

struct Candidate {
    SplitChoice split;
    bool valid = false;
};

Candidate evaluate_continuous(const Matrix& x, std::span<const int> y,
                              std::span<const std::size_t> rows, std::size_t attr,
                              std::size_t class_count, double base_entropy,
                              const TreeParams& params) {
    std::vector<std::size_t> order(rows.begin(), rows.end());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x(a, attr) < x(b, attr); });
    const double n = static_cast<double>(order.size());
    std::vector<double> left(class_count, 0.0);
    std::vector<double> right = count_classes(y, order, class_count);
    const auto min_leaf = static_cast<std::size_t>(params.min_leaf);

    Candidate best;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto k = static_cast<std::size_t>(y[order[i]]);
        left[k] += 1.0;
        right[k] -= 1.0;
        const double v = x(order[i], attr);
        const double next = x(order[i + 1], attr);
        if (!(v < next)) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = order.size() - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double dl = static_cast<double>(nl), dr = static_cast<double>(nr);
        const double gain = base_entropy - (dl * entropy_of(left) + dr * entropy_of(right)) / n;
        if (!best.valid || gain > best.split.gain + kEpsilon) {
            best.valid = true;
            best.split.attribute = attr;
            best.split.nominal = false;
            best.split.branches = 2;
            best.split.threshold = 0.5 * (v + next);
            best.split.gain = gain;
            const std::array<double, 2> sizes{dl, dr};
            best.split.gain_ratio = gain / split_info(sizes);
        }
    }
    return best;
}

Candidate evaluate_nominal(const Matrix& x, std::span<const int> y,
                           std::span<const std::size_t> rows, std::size_t attr,
                           std::size_t class_count, double base_entropy, const TreeParams& params) {
    std::size_t levels = 0;
    for (auto r : rows) levels = std::max(levels, static_cast<std::size_t>(x(r, attr)) + 1);
    std::vector<std::vector<double>> counts(levels, std::vector<double>(class_count, 0.0));
    std::vector<double> sizes(levels, 0.0);
    for (auto r : rows) {
        const auto b = static_cast<std::size_t>(x(r, attr));
        counts[b][static_cast<std::size_t>(y[r])] += 1.0;
        sizes[b] += 1.0;
    }
    const auto big = std::count_if(sizes.begin(), sizes.end(), [&](double s) {
        return s >= static_cast<double>(params.min_leaf);
    });
    Candidate c;
    if (big < 2) return c;
    const double n = static_cast<double>(rows.size());
    double cond = 0.0;
    for (std::size_t b = 0; b < levels; ++b) cond += sizes[b] * entropy_of(counts[b]);
    c.valid = true;
    c.split.attribute = attr;
    c.split.nominal = true;
    c.split.branches = levels;
    c.split.gain = base_entropy - cond / n;
    c.split.gain_ratio = c.split.gain / split_info(sizes);
    return c;
}

}  // namespace

std::optional<SplitChoice> choose_split(const Matrix& x, std::span<const int> y,
                                        std::span<const std::size_t> rows,
                                        std::size_t class_count, const std::vector<bool>& nominal,
                                        const TreeParams& params) {
    const auto counts = count_classes(y, rows, class_count);
    const double base = entropy_of(counts);
    std::vector<SplitChoice> candidates;
    for (std::size_t a = 0; a < x.cols(); ++a) {
        const bool is_nominal = a < nominal.size() && nominal[a];
        auto c = is_nominal ? evaluate_nominal(x, y, rows, a, class_count, base, params)
                            : evaluate_continuous(x, y, rows, a, class_count, base, params);
        if (c.valid && c.split.gain > kEpsilon) candidates.push_back(c.split);
    }
    if (candidates.empty()) return std::nullopt;
    double mean_gain = 0.0;
    for (const auto& c : candidates) mean_gain += c.gain;
    mean_gain /= static_cast<double>(candidates.size());

    std::optional<SplitChoice> best;
    for (const auto& c : candidates) {
        if (c.gain < mean_gain - kEpsilon) continue;
        if (!best || c.gain_ratio > best->gain_ratio + kEpsilon) best = c;
    }
    return best;
}

double pessimistic_extra_errors(double n, double e, double confidence) {
    if (n <= 0.0) return 0.0;
    if (e < 1e-6) return n * (1.0 - std::exp(std::log(confidence) / n));
    if (e < 0.9999) {
        const double v = n * (1.0 - std::exp(std::log(confidence) / n));
        return v + e * (pessimistic_extra_errors(n, 1.0, confidence) - v);
    }
    if (e + 0.5 >= n) return 0.67 * (n - e);
    const double z = confidence_deviation(confidence);
    const double coeff = z * z;
    const double pr = (e + 0.5 + coeff / 2.0 +
                       std::sqrt(coeff * ((e + 0.5) * (1.0 - (e + 0.5) / n) + coeff / 4.0))) /
                      (n + coeff);
    return n * pr - e;
}

DecisionTree DecisionTree::fit(const Matrix& x, std::span<const int> y, std::size_t class_count,
                               const std::vector<bool>& nominal, const TreeParams& params) {
    if (x.rows() != y.size()) throw std::invalid_argument("c4.5: row/label count mismatch");
    if (x.rows() == 0) throw std::invalid_argument("c4.5: empty training set");
    DecisionTree tree;
    tree.width_ = x.cols();
    tree.class_count_ = class_count;
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    tree.nodes_.reserve(2 * x.rows());
    tree.grow(x, y, std::move(rows), nominal, params, {});
    tree.unpruned_nodes_ = tree.nodes_.size();
    if (params.prune) tree.prune(0, params.confidence);
    return tree;
}

std::size_t DecisionTree::grow(const Matrix& x, std::span<const int> y,
                               std::vector<std::size_t> rows, const std::vector<bool>& nominal,
                               const TreeParams& params, std::span<const double> parent_counts) {
    const std::size_t index = nodes_.size();
    nodes_.emplace_back();
    {
        Node& node = nodes_[index];
        node.class_counts = count_classes(y, rows, class_count_);
        node.label = rows.empty() ? majority(parent_counts) : majority(node.class_counts);
    }
    const auto& counts = nodes_[index].class_counts;
    const double n = static_cast<double>(rows.size());
    const bool pure = std::any_of(counts.begin(), counts.end(), [&](double c) { return c == n; });
    if (rows.empty() || pure || rows.size() < 2 * params.min_leaf) return index;

    const auto split = choose_split(x, y, rows, class_count_, nominal, params);
    if (!split) return index;

    std::vector<std::vector<std::size_t>> parts(split->branches);
    for (auto r : rows) {
        const std::size_t b = split->nominal ? static_cast<std::size_t>(x(r, split->attribute))
                                             : (x(r, split->attribute) <= split->threshold ? 0 : 1);
        parts[b].push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const std::vector<double> here = counts;
    std::vector<std::size_t> kids;
    for (auto& part : parts) kids.push_back(grow(x, y, std::move(part), nominal, params, here));

    Node& node = nodes_[index];
    node.leaf = false;
    node.attribute = split->attribute;
    node.nominal = split->nominal;
    node.threshold = split->threshold;
    node.children = std::move(kids);
    return index;
}

double DecisionTree::prune(std::size_t index, double confidence) {
    Node& node = nodes_[index];
    const double n = std::accumulate(node.class_counts.begin(), node.class_counts.end(), 0.0);
    const double e = n - (n > 0.0 ? node.class_counts[static_cast<std::size_t>(node.label)] : 0.0);
    const double as_leaf = e + pessimistic_extra_errors(n, e, confidence);
    if (node.leaf) return as_leaf;

    double subtree = 0.0;
    const auto kids = node.children;
    for (auto c : kids) subtree += prune(c, confidence);

    Node& again = nodes_[index];
    if (as_leaf <= subtree + 0.1) {
        again.leaf = true;
        again.children.clear();
        return as_leaf;
    }
    return subtree;
}

int DecisionTree::predict(std::span<const double> row) const {
    if (row.size() != width_) throw std::invalid_argument("c4.5: feature width mismatch");
    std::size_t i = 0;
    while (!nodes_[i].leaf) {
        const Node& node = nodes_[i];
        const double v = row[node.attribute];
        std::size_t b;
        if (node.nominal) {
            if (v < 0.0 || v >= static_cast<double>(node.children.size())) return node.label;
            b = static_cast<std::size_t>(v);
        } else {
            b = v <= node.threshold ? 0 : 1;
        }
        i = node.children[b];
    }
    return nodes_[i].label;
}

std::size_t DecisionTree::node_count() const {
    std::size_t count = 0;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        ++count;
        for (auto c : nodes_[i].children) stack.push_back(c);
    }
    return count;
}

std::size_t DecisionTree::depth() const {
    std::size_t best = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [i, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        for (auto c : nodes_[i].children) stack.emplace_back(c, d + 1);
    }
    return best;
}

std::vector<double> DecisionTree::leaf_sizes() const {
    std::vector<double> out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        if (nodes_[i].leaf) {
            out.push_back(std::accumulate(nodes_[i].class_counts.begin(),
                                          nodes_[i].class_counts.end(), 0.0));
        }
        for (auto c : nodes_[i].children) stack.push_back(c);
    }
    return out;
}

}  // namespace moedr
