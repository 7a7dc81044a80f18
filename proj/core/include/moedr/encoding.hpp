#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moedr/dataset.hpp"
#include "moedr/rng.hpp"

namespace moedr {

/// One gene per attribute: selection bit, discretization bit, and the cut value
/// used when the attribute is binarized.
struct Gene {
    bool select = false;
    bool discretize = false;
    double cut = 0.0;

    friend bool operator==(const Gene&, const Gene&) = default;
};

struct Chromosome {
    std::vector<Gene> genes;

    std::size_t size() const noexcept { return genes.size(); }
    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

using Bounds = std::vector<std::pair<double, double>>;

struct DecodedView {
    std::vector<std::size_t> selected;
    /// (attribute index, cut) for every selected attribute marked for binarization.
    std::vector<std::pair<std::size_t, double>> discretized;

    bool feasible() const noexcept { return !selected.empty(); }

    /// All attributes selected, none discretized.
    static DecodedView identity(std::size_t attribute_count);

    friend bool operator==(const DecodedView&, const DecodedView&) = default;
};

class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError() : std::runtime_error("chromosome selects no features") {}
};

/// Bits uniform over {0,1}; cuts uniform in [lb, ub]. Redraws empty selections a
/// bounded number of times, then forces one random select bit on.
Chromosome random_chromosome(const Bounds& bounds, Rng& rng);

/// Keeps every cut inside its attribute's [lb, ub].
void clamp_cuts(Chromosome& chromosome, const Bounds& bounds);

/// `nominal` (optional, one flag per gene) suppresses binarization of nominal attributes.
DecodedView decode(const Chromosome& chromosome, const std::vector<bool>& nominal = {});

DecodedView decode(const Chromosome& chromosome, const Dataset& dataset);

/// Binarized value: 1 when strictly above the cut, else 0.
inline double binarize(double value, double cut) noexcept { return value > cut ? 1.0 : 0.0; }

/// Projects the dataset onto the selected columns (in index order), replacing
/// discretized columns by their 0/1 binarization. Throws InfeasibleError when
/// the view selects nothing.
Dataset transform(const Dataset& dataset, const DecodedView& view);

/// JSON text of a decoded view: selected indices, discretized indices and cuts,
/// with attribute names when a dataset is supplied.
std::string recipe_json(const DecodedView& view, const Dataset* dataset = nullptr);

}  // namespace moedr
