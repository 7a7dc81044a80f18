#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace oracle {

double entropy_of_rows(std::span<const int> labels, const std::vector<std::size_t>& rows) {
    if (rows.empty()) return 0.0;
    std::map<int, double> counts;
    for (auto r : rows) counts[labels[r]] += 1.0;
    double h = 0.0;
    const double n = static_cast<double>(rows.size());
    for (const auto& [k, c] : counts) h += -(c / n) * (std::log(c / n) / std::log(2.0));
    return h;
}

double info_gain(std::span<const int> labels, std::span<const double> column, double cut) {
    std::vector<std::size_t> all, left, right;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        all.push_back(i);
        (column[i] > cut ? right : left).push_back(i);
    }
    const double n = static_cast<double>(all.size());
    return entropy_of_rows(labels, all) -
           (static_cast<double>(left.size()) / n) * entropy_of_rows(labels, left) -
           (static_cast<double>(right.size()) / n) * entropy_of_rows(labels, right);
}

bool dominates(const moedr::ObjectiveVector& a, const moedr::ObjectiveVector& b) {
    const bool no_worse = !(a.f1 > b.f1) && !(a.f2 > b.f2);
    const bool better = (a.f1 < b.f1) || (a.f2 < b.f2);
    return no_worse && better;
}

std::vector<std::vector<std::size_t>> peel_fronts(std::span<const moedr::ObjectiveVector> pts) {
    std::set<std::size_t> remaining;
    for (std::size_t i = 0; i < pts.size(); ++i) remaining.insert(i);
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        for (auto i : remaining) {
            bool dominated = false;
            for (auto j : remaining)
                if (j != i && oracle::dominates(pts[j], pts[i])) dominated = true;
            if (!dominated) front.push_back(i);
        }
        for (auto i : front) remaining.erase(i);
        fronts.push_back(front);
    }
    return fronts;
}

std::vector<double> crowding(std::span<const moedr::ObjectiveVector> pts) {
    const std::size_t n = pts.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n, 0.0);
    if (n <= 2) return std::vector<double>(n, inf);
    for (int m = 0; m < 2; ++m) {
        std::vector<std::pair<double, std::size_t>> v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(m == 0 ? pts[i].f1 : pts[i].f2, i);
        std::stable_sort(v.begin(), v.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        const double fmin = v.front().first, fmax = v.back().first;
        d[v.front().second] = inf;
        d[v.back().second] = inf;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (fmax - fmin > 0) d[v[k].second] += (v[k + 1].first - v[k - 1].first) / (fmax - fmin);
        }
    }
    return d;
}

std::optional<moedr::SplitChoice> root_split(const moedr::Matrix& x, std::span<const int> y,
                                             std::size_t class_count, std::size_t min_leaf) {
    (void)class_count;
    const std::size_t m = x.rows();
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    const double base = entropy_of_rows(y, all);

    std::vector<moedr::SplitChoice> per_attribute;
    for (std::size_t a = 0; a < x.cols(); ++a) {
        std::set<double> distinct;
        for (std::size_t r = 0; r < m; ++r) distinct.insert(x(r, a));
        std::vector<double> vals(distinct.begin(), distinct.end());
        std::optional<moedr::SplitChoice> best;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            const double t = 0.5 * (vals[i] + vals[i + 1]);
            std::vector<std::size_t> left, right;
            for (std::size_t r = 0; r < m; ++r) (x(r, a) <= t ? left : right).push_back(r);
            if (left.size() < min_leaf || right.size() < min_leaf) continue;
            const double pl = static_cast<double>(left.size()) / static_cast<double>(m);
            const double pr = 1.0 - pl;
            const double gain = base - pl * entropy_of_rows(y, left) - pr * entropy_of_rows(y, right);
            const double si = -pl * std::log2(pl) - pr * std::log2(pr);
            if (!best || gain > best->gain + 1e-10) {
                moedr::SplitChoice s;
                s.attribute = a;
                s.threshold = t;
                s.gain = gain;
                s.gain_ratio = gain / si;
                best = s;
            }
        }
        if (best && best->gain > 1e-10) per_attribute.push_back(*best);
    }
    if (per_attribute.empty()) return std::nullopt;
    double mean = 0.0;
    for (const auto& s : per_attribute) mean += s.gain;
    mean /= static_cast<double>(per_attribute.size());
    std::optional<moedr::SplitChoice> winner;
    for (const auto& s : per_attribute) {
        if (s.gain < mean - 1e-10) continue;
        if (!winner || s.gain_ratio > winner->gain_ratio + 1e-10) winner = s;
    }
    return winner;
}

std::vector<double> gaussian_nb_posterior(const moedr::Matrix& x, std::span<const int> y,
                                          std::size_t class_count, std::span<const double> query) {
    std::vector<double> joint(class_count, 0.0);
    const double m = static_cast<double>(x.rows());
    for (std::size_t k = 0; k < class_count; ++k) {
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < x.rows(); ++r)
            if (y[r] == static_cast<int>(k)) rows.push_back(r);
        if (rows.empty()) continue;
        double p = static_cast<double>(rows.size()) / m;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double mu = 0.0;
            for (auto r : rows) mu += x(r, j);
            mu /= static_cast<double>(rows.size());
            double var = 0.0;
            for (auto r : rows) var += (x(r, j) - mu) * (x(r, j) - mu);
            var /= static_cast<double>(rows.size() - 1);
            p *= std::exp(-(query[j] - mu) * (query[j] - mu) / (2 * var)) /
                 std::sqrt(2 * std::numbers::pi * var);
        }
        joint[k] = p;
    }
    double z = 0.0;
    for (double v : joint) z += v;
    for (double& v : joint) v /= z;
    return joint;
}

}  // namespace oracle
