#include "support/fixtures.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace fixtures {

std::string data_path(const std::string& file) { return std::string(MOEDR_DATA_DIR) + "/" + file; }

const moedr::Dataset& dataset(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<moedr::Dataset>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[name];
    if (!slot) slot = std::make_unique<moedr::Dataset>(moedr::load_csv(data_path(name + ".csv")));
    return *slot;
}

moedr::Chromosome iris_worked_chromosome() {
    moedr::Chromosome c;
    c.genes = {{true, false, 5.0}, {true, true, 2.32}, {false, false, 3.0}, {true, true, 1.69}};
    return c;
}

namespace {
moedr::Dataset two_feature(std::size_t rows, std::uint64_t seed, bool informative) {
    moedr::Rng rng(seed);
    moedr::Dataset ds;
    ds.name = informative ? "label_plus_noise" : "independent";
    ds.values = moedr::Matrix(rows, 2);
    ds.class_names = {"0", "1"};
    for (std::size_t r = 0; r < rows; ++r) {
        const int y = static_cast<int>(r % 2);
        ds.labels.push_back(y);
        ds.values(r, 0) = informative ? static_cast<double>(y) : rng.uniform();
        ds.values(r, 1) = rng.uniform();
    }
    if (!informative) rng.shuffle(ds.labels.begin(), ds.labels.end());
    for (std::size_t j = 0; j < 2; ++j) {
        moedr::AttributeMeta meta;
        meta.name = "f" + std::to_string(j);
        ds.attributes.push_back(meta);
    }
    const auto b = moedr::compute_bounds(ds);
    for (std::size_t j = 0; j < 2; ++j) {
        ds.attributes[j].lower_bound = b[j].first;
        ds.attributes[j].upper_bound = b[j].second;
    }
    return ds;
}
}  // namespace

moedr::Dataset label_plus_noise(std::size_t rows, std::uint64_t seed) { return two_feature(rows, seed, true); }

moedr::Dataset independent_labels(std::size_t rows, std::uint64_t seed) { return two_feature(rows, seed, false); }

}  // namespace fixtures
