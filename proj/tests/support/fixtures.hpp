#pragma once

#include <cstdint>
#include <string>

#include "moedr/dataset.hpp"
#include "moedr/encoding.hpp"

namespace fixtures {

std::string data_path(const std::string& file);

/// Bundled benchmark CSV (label column = last).
const moedr::Dataset& dataset(const std::string& name);

/// Four-gene chromosome: gene 1 selected only, gene 2 selected and cut at 2.32,
/// gene 3 unused, gene 4 selected and cut at 1.69.
moedr::Chromosome iris_worked_chromosome();

/// Feature 0 equals the binary label; feature 1 is uniform noise.
moedr::Dataset label_plus_noise(std::size_t rows, std::uint64_t seed);

/// Binary labels drawn independently of two uniform features.
moedr::Dataset independent_labels(std::size_t rows, std::uint64_t seed);

}  // namespace fixtures
