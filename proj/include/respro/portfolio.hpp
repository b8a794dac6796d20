#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "respro/errors.hpp"
#include "respro/ingest.hpp"
#include "respro/resilience.hpp"
#include "respro/series.hpp"
#include "respro/smoothing.hpp"

namespace respro {

/// How candidate series are selected for a diversified-system analysis:
/// fix one column, group by another, rank groups by mean production, keep the
/// top_n, then drop series with length <= min_length.
struct SelectionSpec {
    std::string fixed_column;
    std::string fixed_value;
    std::string group_by;
    int top_n = 15;
    int min_length = 30;  // strictly-greater-than threshold

    void validate() const {
        if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
        if (min_length < 2) throw std::invalid_argument("min_length must be >= 2");
    }
};

struct Exclusion {
    enum class Reason { too_short, empty_intersection };

    std::string name;
    Reason reason;

    friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

inline const char* to_string(Exclusion::Reason r) {
    return r == Exclusion::Reason::too_short ? "too_short" : "empty_intersection";
}

struct RankedSelection {
    std::vector<AnnualSeries> series;   // descending mean order
    std::vector<Exclusion> excluded;    // dropped after the top_n cut
};

/// Per-series and progressively-aggregated statistics of a production system.
/// All seven parallel arrays share one length. pairwise_correlation[k] (k>=1)
/// correlates series k against the sum of series 0..k-1; element 0 is a fixed
/// 0 placeholder, and a missing value marks a correlation that could not be
/// computed.
struct PortfolioReport {
    std::vector<std::string> labels;
    std::vector<double> individual_means;
    std::vector<double> individual_resilience;
    std::vector<double> aggregated_resilience;
    std::vector<std::optional<double>> pairwise_correlation;
    std::vector<int> individual_lengths;
    std::vector<int> aggregated_lengths;
    std::vector<Exclusion> excluded;

    std::size_t size() const noexcept { return labels.size(); }
};

/// Group the table rows by `spec.group_by` after fixing `spec.fixed_column`,
/// rank groups by descending mean Value, truncate to the top_n, and build one
/// series per group. Groups tie-break by label; series at or under min_length
/// are dropped and recorded. Filtering happens after the top_n cut, so a long
/// series outside the top_n is never considered.
inline RankedSelection rank_and_filter(const FaostatTable& table, const SelectionSpec& spec) {
    spec.validate();
    const std::vector<ColumnFilter> fixed{{spec.fixed_column, spec.fixed_value}};
    const auto group_col = table.column_index(spec.group_by);
    if (!group_col) throw MissingColumnError("no column named '" + spec.group_by + "'");

    const std::vector<std::size_t> rows = matching_rows(table, fixed);
    if (rows.empty())
        throw NoMatchingRowsError("no rows match " + spec.fixed_column + "=" + spec.fixed_value);

    std::map<std::string, std::pair<double, std::size_t>> groups;  // label -> (sum, count)
    for (std::size_t r : rows) {
        auto& [sum, count] = groups[table.cell(r, *group_col)];
        sum += table.value(r);
        ++count;
    }
    std::vector<std::pair<double, std::string>> ranked;
    ranked.reserve(groups.size());
    for (const auto& [label, acc] : groups)
        ranked.emplace_back(acc.first / static_cast<double>(acc.second), label);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;  // ties keep label order from the map
    });
    if (ranked.size() > static_cast<std::size_t>(spec.top_n)) ranked.resize(spec.top_n);

    RankedSelection out;
    for (const auto& [_, label] : ranked) {
        AnnualSeries s = extract_series(
            table, {{spec.fixed_column, spec.fixed_value}, {spec.group_by, label}}, label);
        if (s.size() > static_cast<std::size_t>(spec.min_length)) {
            out.series.push_back(std::move(s));
        } else {
            out.excluded.push_back({label, Exclusion::Reason::too_short});
        }
    }
    return out;
}

/// Progressive-aggregation statistics: individual stats per series, resilience
/// of the running inner-join sums, and each series' anomaly correlation with
/// the previous running sum.
inline PortfolioReport tot_res(std::span<const AnnualSeries> series,
                               const SmoothingConfig& cfg = {}) {
    if (series.empty()) throw InvalidSeriesError("portfolio needs at least one series");

    PortfolioReport rep;
    for (const AnnualSeries& s : series) {
        rep.labels.push_back(s.name());
        rep.individual_means.push_back(s.mean());
        rep.individual_resilience.push_back(production_resilience(s, cfg).resilience);
        rep.individual_lengths.push_back(static_cast<int>(s.size()));
    }

    AnnualSeries accumulated = series.front();
    rep.aggregated_resilience.push_back(rep.individual_resilience.front());
    rep.aggregated_lengths.push_back(rep.individual_lengths.front());
    rep.pairwise_correlation.emplace_back(0.0);

    for (std::size_t k = 1; k < series.size(); ++k) {
        std::optional<double> corr;
        try {
            corr = anomaly_correlation(accumulated, series[k], cfg);
        } catch (const InsufficientOverlapError&) {
            // recorded as missing; the aggregation itself proceeds
        } catch (const ZeroVarianceError&) {
        }
        rep.pairwise_correlation.push_back(corr);

        try {
            accumulated = accumulated + series[k];
        } catch (const EmptyIntersectionError&) {
            throw EmptyIntersectionError("adding '" + series[k].name() +
                                         "' leaves no common years in the aggregate");
        }
        rep.aggregated_resilience.push_back(production_resilience(accumulated, cfg).resilience);
        rep.aggregated_lengths.push_back(static_cast<int>(accumulated.size()));
    }
    return rep;
}

/// Full diversified-system pipeline: rank and filter the table, then run the
/// progressive aggregation. Exclusions are carried into the report.
inline PortfolioReport analyze_portfolio(const FaostatTable& table, const SelectionSpec& spec,
                                         const SmoothingConfig& cfg = {}) {
    RankedSelection sel = rank_and_filter(table, spec);
    if (sel.series.empty())
        throw NoMatchingRowsError("every candidate series for " + spec.fixed_column + "=" +
                                  spec.fixed_value + " was shorter than " +
                                  std::to_string(spec.min_length + 1) + " years");
    PortfolioReport rep = tot_res(sel.series, cfg);
    rep.excluded = std::move(sel.excluded);
    return rep;
}

}  // namespace respro
