#include "moedr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace moedr {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    std::string out(s.substr(b, e - b + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"')
        out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i < line.size() && line[i] == '"') quoted = !quoted;
        if (i == line.size() || (line[i] == ',' && !quoted)) {
            out.push_back(trim(std::string_view(line).substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const char* first = s.data();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

/// Sorted distinct values; numerically when every value parses as a number.
std::vector<std::string> ordered_levels(const std::set<std::string>& distinct) {
    std::vector<std::string> levels(distinct.begin(), distinct.end());
    const bool numeric = std::all_of(levels.begin(), levels.end(),
                                     [](const std::string& s) { return parse_number(s).has_value(); });
    if (numeric) {
        std::stable_sort(levels.begin(), levels.end(), [](const std::string& a, const std::string& b) {
            return *parse_number(a) < *parse_number(b);
        });
    }
    return levels;
}

std::size_t resolve_label(const LabelColumn& label, const std::vector<std::string>& header,
                          std::size_t width) {
    if (const auto* name = std::get_if<std::string>(&label.selector)) {
        const auto it = std::find(header.begin(), header.end(), *name);
        if (it == header.end()) throw DataError("label column '" + *name + "' not found in header");
        return static_cast<std::size_t>(it - header.begin());
    }
    const long pos = std::get<long>(label.selector);
    const long w = static_cast<long>(width);
    const long idx = pos < 0 ? w + pos : pos;
    if (idx < 0 || idx >= w)
        throw DataError("label column index " + std::to_string(pos) + " out of range for " +
                        std::to_string(width) + " columns");
    return static_cast<std::size_t>(idx);
}

}  // namespace

LabelColumn LabelColumn::parse(const std::string& text) {
    LabelColumn out;
    long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && ptr == text.data() + text.size())
        out.selector = v;
    else
        out.selector = text;
    return out;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    Dataset out;
    out.name = name;
    out.values = values.select_rows(rows);
    out.attributes = attributes;
    out.class_names = class_names;
    out.labels.reserve(rows.size());
    for (auto r : rows) out.labels.push_back(labels[r]);
    return out;
}

Dataset parse_csv(const std::string& text, const LoadOptions& options, const std::string& source,
                  LoadStats* stats) {
    std::istringstream in(text);
    std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        records.emplace_back(line_no, split_fields(line));
    }
    if (records.empty()) throw DataError(source + ": empty dataset");

    const std::size_t width = records.front().second.size();
    if (width < 2) throw ParseError(source + ": need at least one attribute and a label column", records.front().first);

    bool header = false;
    if (options.has_header) {
        header = *options.has_header;
    } else {
        const auto& first = records.front().second;
        const auto* second = records.size() > 1 ? &records[1].second : nullptr;
        for (std::size_t c = 0; c < first.size(); ++c) {
            if (parse_number(first[c])) continue;
            if (!second || (c < second->size() && parse_number((*second)[c]))) {
                header = true;
                break;
            }
        }
    }

    std::vector<std::string> names;
    if (header) {
        names = records.front().second;
        records.erase(records.begin());
    } else {
        for (std::size_t c = 0; c < width; ++c) names.push_back("col" + std::to_string(c));
    }

    for (const auto& [ln, fields] : records) {
        if (fields.size() != width) {
            throw ParseError(source + ": row at line " + std::to_string(ln) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(width),
                             ln);
        }
    }

    const std::size_t label_col = resolve_label(options.label, names, width);

    const auto is_missing = [&](const std::string& cell) {
        return std::find(options.missing_tokens.begin(), options.missing_tokens.end(), cell) !=
               options.missing_tokens.end();
    };
    std::vector<const std::vector<std::string>*> kept;
    std::size_t dropped = 0;
    for (const auto& rec : records) {
        if (std::any_of(rec.second.begin(), rec.second.end(), is_missing))
            ++dropped;
        else
            kept.push_back(&rec.second);
    }
    if (stats) stats->dropped_rows = dropped;
    if (kept.empty()) throw DataError(source + ": empty dataset");

    Dataset ds;
    ds.name = std::filesystem::path(source).stem().string();
    const std::size_t m = kept.size();
    const std::size_t n = width - 1;
    ds.values = Matrix(m, n);

    std::size_t j = 0;
    for (std::size_t c = 0; c < width; ++c) {
        if (c == label_col) continue;
        AttributeMeta meta;
        meta.name = names[c];
        bool numeric = true;
        for (const auto* rec : kept) numeric = numeric && parse_number((*rec)[c]).has_value();
        meta.kind = numeric ? AttributeKind::continuous : AttributeKind::nominal;
        for (const auto& key : {names[c], "#" + std::to_string(c)}) {
            if (auto it = options.kind_overrides.find(key); it != options.kind_overrides.end())
                meta.kind = it->second;
        }
        if (meta.kind == AttributeKind::continuous) {
            if (!numeric) throw DataError(source + ": column '" + meta.name + "' declared continuous but holds text");
            for (std::size_t r = 0; r < m; ++r) ds.values(r, j) = *parse_number((*kept[r])[c]);
        } else {
            std::set<std::string> distinct;
            for (const auto* rec : kept) distinct.insert((*rec)[c]);
            meta.levels = ordered_levels(distinct);
            for (std::size_t r = 0; r < m; ++r) {
                const auto it = std::find(meta.levels.begin(), meta.levels.end(), (*kept[r])[c]);
                ds.values(r, j) = static_cast<double>(it - meta.levels.begin());
            }
        }
        ds.attributes.push_back(std::move(meta));
        ++j;
    }

    std::set<std::string> classes;
    for (const auto* rec : kept) classes.insert((*rec)[label_col]);
    ds.class_names = ordered_levels(classes);
    if (ds.class_names.size() < 2)
        throw DataError(source + ": labels contain a single class ('" + ds.class_names.front() + "')");
    ds.labels.reserve(m);
    for (const auto* rec : kept) {
        const auto it = std::find(ds.class_names.begin(), ds.class_names.end(), (*rec)[label_col]);
        ds.labels.push_back(static_cast<int>(it - ds.class_names.begin()));
    }

    const auto bounds = compute_bounds(ds);
    for (std::size_t a = 0; a < n; ++a) {
        ds.attributes[a].lower_bound = bounds[a].first;
        ds.attributes[a].upper_bound = bounds[a].second;
    }
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options, LoadStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), options, path.string(), stats);
}

void apply_manifest(const std::filesystem::path& path, LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos && hash == line.find_first_not_of(" \t"))
            continue;
        if (is_blank(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path.string() + ": expected 'key = value' at line " + std::to_string(line_no), line_no);
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        if (key == "label") {
            options.label = LabelColumn::parse(value);
        } else if (key == "header") {
            options.has_header = (value == "true" || value == "yes" || value == "1");
        } else if (value == "continuous") {
            options.kind_overrides[key] = AttributeKind::continuous;
        } else if (value == "nominal") {
            options.kind_overrides[key] = AttributeKind::nominal;
        } else {
            throw ParseError(path.string() + ": unknown kind '" + value + "' at line " + std::to_string(line_no), line_no);
        }
    }
}

std::vector<std::pair<double, double>> compute_bounds(const Dataset& dataset) {
    std::vector<std::pair<double, double>> out(dataset.cols(),
                                               {std::numeric_limits<double>::infinity(),
                                                -std::numeric_limits<double>::infinity()});
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        const auto row = dataset.values.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            out[c].first = std::min(out[c].first, row[c]);
            out[c].second = std::max(out[c].second, row[c]);
        }
    }
    return out;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
    std::vector<std::size_t> out(k, 0);
    for (auto a : assignments) ++out[a];
    return out;
}

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, Rng& rng) {
    if (k < 2) throw DataError("fold count must be at least 2");
    if (k > labels.size())
        throw DataError("fold count " + std::to_string(k) + " exceeds instance count " +
                        std::to_string(labels.size()));
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    FoldPlan plan;
    plan.k = k;
    plan.assignments.assign(labels.size(), 0);
    std::size_t deal = 0;
    for (auto& [cls, members] : by_class) {
        rng.shuffle(members.begin(), members.end());
        for (auto idx : members) {
            plan.assignments[idx] = deal;
            deal = (deal + 1) % k;
        }
    }
    return plan;
}

}  // namespace moedr
