#include "moedr/encoding.hpp"

#include <algorithm>

#include <json.hpp>

namespace moedr {

namespace {
constexpr int kInitRetries = 64;
}

DecodedView DecodedView::identity(std::size_t attribute_count) {
    DecodedView v;
    v.selected.resize(attribute_count);
    for (std::size_t i = 0; i < attribute_count; ++i) v.selected[i] = i;
    return v;
}

Chromosome random_chromosome(const Bounds& bounds, Rng& rng) {
    Chromosome c;
    c.genes.resize(bounds.size());
    for (int attempt = 0; attempt < kInitRetries; ++attempt) {
        bool any = false;
        for (std::size_t j = 0; j < bounds.size(); ++j) {
            auto& g = c.genes[j];
            g.select = rng.coin();
            g.discretize = rng.coin();
            g.cut = rng.uniform(bounds[j].first, bounds[j].second);
            any = any || g.select;
        }
        if (any || bounds.empty()) return c;
    }
    c.genes[rng.below(bounds.size())].select = true;
    return c;
}

void clamp_cuts(Chromosome& chromosome, const Bounds& bounds) {
    for (std::size_t j = 0; j < chromosome.genes.size(); ++j)
        chromosome.genes[j].cut = std::clamp(chromosome.genes[j].cut, bounds[j].first, bounds[j].second);
}

DecodedView decode(const Chromosome& chromosome, const std::vector<bool>& nominal) {
    DecodedView v;
    for (std::size_t j = 0; j < chromosome.genes.size(); ++j) {
        const auto& g = chromosome.genes[j];
        if (!g.select) continue;
        v.selected.push_back(j);
        const bool is_nominal = j < nominal.size() && nominal[j];
        if (g.discretize && !is_nominal) v.discretized.emplace_back(j, g.cut);
    }
    return v;
}

DecodedView decode(const Chromosome& chromosome, const Dataset& dataset) {
    std::vector<bool> nominal(dataset.cols());
    for (std::size_t j = 0; j < dataset.cols(); ++j) nominal[j] = dataset.attributes[j].is_nominal();
    return decode(chromosome, nominal);
}

Dataset transform(const Dataset& dataset, const DecodedView& view) {
    if (!view.feasible()) throw InfeasibleError();
    Dataset out;
    out.name = dataset.name;
    out.labels = dataset.labels;
    out.class_names = dataset.class_names;
    out.values = Matrix(dataset.rows(), view.selected.size());

    auto disc = view.discretized.begin();
    for (std::size_t c = 0; c < view.selected.size(); ++c) {
        const auto src = view.selected[c];
        while (disc != view.discretized.end() && disc->first < src) ++disc;
        const bool binarized = disc != view.discretized.end() && disc->first == src;
        AttributeMeta meta = dataset.attributes[src];
        if (binarized) {
            const double cut = disc->second;
            for (std::size_t r = 0; r < dataset.rows(); ++r)
                out.values(r, c) = binarize(dataset.values(r, src), cut);
            meta.name += "_bin";
            meta.kind = AttributeKind::continuous;
            meta.levels.clear();
            const auto col = out.values.column(c);
            const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
            meta.lower_bound = *lo;
            meta.upper_bound = *hi;
        } else {
            for (std::size_t r = 0; r < dataset.rows(); ++r) out.values(r, c) = dataset.values(r, src);
        }
        out.attributes.push_back(std::move(meta));
    }
    return out;
}

std::string recipe_json(const DecodedView& view, const Dataset* dataset) {
    nlohmann::ordered_json j;
    j["selected"] = view.selected;
    auto disc = nlohmann::ordered_json::array();
    for (const auto& [idx, cut] : view.discretized) {
        nlohmann::ordered_json d;
        d["index"] = idx;
        if (dataset) d["name"] = dataset->attributes[idx].name;
        d["cut"] = cut;
        disc.push_back(std::move(d));
    }
    j["discretized"] = std::move(disc);
    if (dataset) {
        auto names = nlohmann::ordered_json::array();
        for (auto idx : view.selected) names.push_back(dataset->attributes[idx].name);
        j["selected_names"] = std::move(names);
    }
    return j.dump(2);
}

}  // namespace moedr
