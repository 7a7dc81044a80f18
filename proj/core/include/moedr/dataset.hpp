#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "moedr/matrix.hpp"
#include "moedr/rng.hpp"

namespace moedr {

enum class AttributeKind { continuous, nominal };

struct AttributeMeta {
    std::string name;
    AttributeKind kind = AttributeKind::continuous;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    /// Category names for nominal attributes; code i maps to levels[i].
    std::vector<std::string> levels;

    bool is_nominal() const noexcept { return kind == AttributeKind::nominal; }
    friend bool operator==(const AttributeMeta&, const AttributeMeta&) = default;
};

/// Immutable after load. Labels are contiguous class indices in [0, class_count).
struct Dataset {
    std::string name;
    Matrix values;
    std::vector<AttributeMeta> attributes;
    std::vector<int> labels;
    std::vector<std::string> class_names;

    std::size_t rows() const noexcept { return values.rows(); }
    std::size_t cols() const noexcept { return values.cols(); }
    std::size_t class_count() const noexcept { return class_names.size(); }

    /// Row subset keeping metadata; bounds are not recomputed.
    Dataset subset(std::span<const std::size_t> rows) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    /// 1-based line number in the source file, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Label column selector: a header name or a 0-based position. Negative
/// positions count from the end (-1 is the last column, the default).
struct LabelColumn {
    std::variant<std::string, long> selector = -1L;

    static LabelColumn parse(const std::string& text);
};

struct LoadOptions {
    LabelColumn label;
    /// nullopt: sniff (first row is a header when any label-free cell is non-numeric).
    std::optional<bool> has_header;
    /// Per-column kind overrides, keyed by column name (or "#<index>").
    std::map<std::string, AttributeKind> kind_overrides;
    /// Tokens treated as missing values.
    std::vector<std::string> missing_tokens{"?", "", "NA", "NaN", "nan"};
};

struct LoadStats {
    std::size_t dropped_rows = 0;
};

Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options = {},
                 LoadStats* stats = nullptr);

/// Parses in-memory CSV text; `source` names it in diagnostics.
Dataset parse_csv(const std::string& text, const LoadOptions& options = {},
                  const std::string& source = "<memory>", LoadStats* stats = nullptr);

/// Reads a manifest of `column = continuous|nominal` lines ('#' comments, optional
/// `label = <name|index>`) and merges it into `options`.
void apply_manifest(const std::filesystem::path& path, LoadOptions& options);

/// Column min/max for every attribute (nominal attributes included, over their codes).
std::vector<std::pair<double, double>> compute_bounds(const Dataset& dataset);

struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::size_t> assignments;

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
    std::vector<std::size_t> fold_sizes() const;

    friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

/// Stratified k-fold assignment: each class is shuffled and dealt round-robin,
/// continuing the deal position across classes so overall fold sizes differ by <= 1.
FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, Rng& rng);

}  // namespace moedr
