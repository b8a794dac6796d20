#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "respro/errors.hpp"
#include "respro/series.hpp"

namespace respro {

/// Row-handling policy for cells that cannot become series points.
struct LoadPolicy {
    enum class OnNonPositive { error, drop };
    enum class OnMissing { drop, error };

    OnNonPositive on_nonpositive = OnNonPositive::error;
    OnMissing on_missing_value = OnMissing::drop;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// RFC 4180 record splitter over the whole file content. Handles quoted
/// fields (embedded commas, doubled quotes, embedded line breaks) and both
/// LF and CRLF endings. Each record carries its 1-based starting line.
struct CsvRecord {
    std::size_t line;
    std::vector<std::string> fields;
};

inline std::vector<CsvRecord> split_csv(std::string_view text, const std::string& path) {
    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        CsvRecord rec{line, {}};
        std::string field;
        bool quoted = false;
        bool done = false;
        while (!done) {
            if (quoted) {
                if (i >= n) throw ParseError(rec.line, "", path + ": unterminated quoted field");
                const char c = text[i++];
                if (c == '"') {
                    if (i < n && text[i] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line;
                    field += c;
                }
            } else if (i >= n) {
                rec.fields.push_back(std::move(field));
                done = true;
            } else {
                const char c = text[i++];
                switch (c) {
                    case '"':
                        quoted = true;
                        break;
                    case ',':
                        rec.fields.push_back(std::move(field));
                        field.clear();
                        break;
                    case '\r':
                        if (i < n && text[i] == '\n') ++i;
                        [[fallthrough]];
                    case '\n':
                        ++line;
                        rec.fields.push_back(std::move(field));
                        done = true;
                        break;
                    default:
                        field += c;
                }
            }
        }
        if (!(rec.fields.size() == 1 && rec.fields[0].empty()))  // skip blank lines
            records.push_back(std::move(rec));
    }
    return records;
}

inline std::optional<int> parse_int(std::string_view s) {
    s = trim(s);
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

/// Dot-decimal real; thousands separators ("1,234.5") are accepted and
/// stripped. Comma decimals are not.
inline std::optional<double> parse_value(std::string_view s) {
    s = trim(s);
    std::string digits;
    digits.reserve(s.size());
    for (char c : s)
        if (c != ',') digits += c;
    if (digits.empty()) return std::nullopt;
    double v = 0.0;
    const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace detail

/// In-memory view of a FAOSTAT-style CSV export. Columns are addressed by
/// header name; Year and Value are typed, everything else is kept as opaque
/// text. (Area, Item, Year) is unique across retained rows.
class FaostatTable {
public:
    static FaostatTable load_csv(const std::string& path, const LoadPolicy& policy = {}) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = std::move(buf).str();
        if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);  // UTF-8 BOM

        auto records = detail::split_csv(text, path);
        if (records.empty()) throw ParseError(1, "", path + ": file has no header row");

        FaostatTable t;
        t.columns_ = records.front().fields;
        for (std::size_t c = 0; c < t.columns_.size(); ++c)
            t.column_index_.emplace(t.columns_[c], c);
        for (const char* required : {"Area", "Item", "Year", "Value"})
            if (!t.column_index_.contains(required))
                throw MissingColumnError(path + ": required column '" + std::string(required) +
                                         "' not found in header");
        const std::size_t area_c = t.column_index_.at("Area");
        const std::size_t item_c = t.column_index_.at("Item");
        const std::size_t year_c = t.column_index_.at("Year");
        const std::size_t value_c = t.column_index_.at("Value");

        std::unordered_map<std::string, std::size_t> seen;  // key -> file line
        for (std::size_t r = 1; r < records.size(); ++r) {
            auto& rec = records[r];
            if (rec.fields.size() != t.columns_.size())
                throw ParseError(rec.line, "",
                                 path + " line " + std::to_string(rec.line) + ": expected " +
                                     std::to_string(t.columns_.size()) + " fields, got " +
                                     std::to_string(rec.fields.size()));

            const auto year = detail::parse_int(rec.fields[year_c]);
            if (!year)
                throw ParseError(rec.line, "Year",
                                 path + " line " + std::to_string(rec.line) + ": Year '" +
                                     rec.fields[year_c] + "' is not an integer");

            const std::string_view raw_value = detail::trim(rec.fields[value_c]);
            if (raw_value.empty()) {
                if (policy.on_missing_value == LoadPolicy::OnMissing::error)
                    throw ParseError(rec.line, "Value",
                                     path + " line " + std::to_string(rec.line) + ": Value is empty");
                ++t.dropped_missing_;
                continue;
            }
            const auto value = detail::parse_value(raw_value);
            if (!value)
                throw ParseError(rec.line, "Value",
                                 path + " line " + std::to_string(rec.line) + ": Value '" +
                                     rec.fields[value_c] + "' is not a number");
            if (!(*value > 0.0)) {
                if (policy.on_nonpositive == LoadPolicy::OnNonPositive::error)
                    throw NonPositiveValueError(path + " line " + std::to_string(rec.line) +
                                                ": Value " + std::string(raw_value) +
                                                " is not positive");
                ++t.dropped_nonpositive_;
                continue;
            }

            std::string key = rec.fields[area_c] + '\x1f' + rec.fields[item_c] + '\x1f' +
                              std::to_string(*year);
            if (auto [it, inserted] = seen.emplace(std::move(key), rec.line); !inserted)
                throw DuplicateKeyError(path + ": duplicate (Area, Item, Year) = (" +
                                        rec.fields[area_c] + ", " + rec.fields[item_c] + ", " +
                                        std::to_string(*year) + ") at lines " +
                                        std::to_string(it->second) + " and " +
                                        std::to_string(rec.line));

            t.years_.push_back(*year);
            t.values_.push_back(*value);
            t.lines_.push_back(rec.line);
            t.cells_.push_back(std::move(rec.fields));
        }
        return t;
    }

    std::span<const std::string> columns() const noexcept { return columns_; }
    std::optional<std::size_t> column_index(std::string_view name) const {
        auto it = column_index_.find(std::string(name));
        if (it == column_index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t row_count() const noexcept { return cells_.size(); }
    const std::string& cell(std::size_t row, std::size_t col) const { return cells_[row][col]; }
    int year(std::size_t row) const noexcept { return years_[row]; }
    double value(std::size_t row) const noexcept { return values_[row]; }
    std::size_t source_line(std::size_t row) const noexcept { return lines_[row]; }

    std::size_t dropped_missing() const noexcept { return dropped_missing_; }
    std::size_t dropped_nonpositive() const noexcept { return dropped_nonpositive_; }

private:
    std::vector<std::string> columns_;
    std::unordered_map<std::string, std::size_t> column_index_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<int> years_;
    std::vector<double> values_;
    std::vector<std::size_t> lines_;
    std::size_t dropped_missing_ = 0;
    std::size_t dropped_nonpositive_ = 0;
};

using ColumnFilter = std::pair<std::string, std::string>;  // (column, required value)

/// Row indexes matching every (column == value) filter.
inline std::vector<std::size_t> matching_rows(const FaostatTable& table,
                                              std::span<const ColumnFilter> filters) {
    std::vector<std::size_t> cols;
    for (const auto& [column, _] : filters) {
        const auto c = table.column_index(column);
        if (!c) throw MissingColumnError("no column named '" + column + "'");
        cols.push_back(*c);
    }
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        bool match = true;
        for (std::size_t f = 0; f < filters.size() && match; ++f)
            match = table.cell(r, cols[f]) == filters[f].second;
        if (match) rows.push_back(r);
    }
    return rows;
}

/// Series over (Year, Value) of the rows matching all filters, year-ascending.
/// The default name joins the filter values with '-' (e.g. "Wheat-France").
inline AnnualSeries extract_series(const FaostatTable& table, std::span<const ColumnFilter> filters,
                                   std::string name = "") {
    const std::vector<std::size_t> rows = matching_rows(table, filters);
    if (rows.empty()) {
        std::string desc;
        for (const auto& [column, value] : filters)
            desc += (desc.empty() ? "" : ", ") + column + "=" + value;
        throw NoMatchingRowsError("no rows match " + (desc.empty() ? "an empty filter" : desc));
    }
    if (name.empty()) {
        for (const auto& [_, value] : filters) name += (name.empty() ? "" : "-") + value;
    }

    std::vector<YearValue> pts;
    pts.reserve(rows.size());
    for (std::size_t r : rows) pts.push_back({table.year(r), table.value(r)});
    std::sort(pts.begin(), pts.end(), [](const YearValue& a, const YearValue& b) {
        return a.year < b.year;
    });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].year == pts[i - 1].year)
            throw InvalidSeriesError("filters select more than one row for year " +
                                     std::to_string(pts[i].year) +
                                     "; add filters until the selection is a single series");
    return AnnualSeries(std::move(name), pts);
}

inline AnnualSeries extract_series(const FaostatTable& table,
                                   std::initializer_list<ColumnFilter> filters,
                                   std::string name = "") {
    return extract_series(table, std::span<const ColumnFilter>(filters.begin(), filters.size()),
                          std::move(name));
}

}  // namespace respro
