#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "respro/detail/numeric.hpp"
#include "respro/errors.hpp"

namespace respro {

struct YearValue {
    int year;
    double value;

    friend bool operator==(const YearValue&, const YearValue&) = default;
};

/// Annual production time-series: a named, year-indexed sequence of strictly
/// positive values. Years are strictly increasing; gaps are allowed and kept
/// as-is. Immutable after construction, so instances can be shared freely.
class AnnualSeries {
public:
    AnnualSeries(std::string name, std::span<const YearValue> points)
        : name_(std::move(name)) {
        if (name_.empty()) throw InvalidSeriesError("series name must be non-empty");
        if (points.empty())
            throw InvalidSeriesError("series '" + name_ + "' must have at least one point");
        years_.reserve(points.size());
        values_.reserve(points.size());
        for (const auto& p : points) {
            if (!years_.empty() && p.year <= years_.back())
                throw InvalidSeriesError("series '" + name_ + "': years must be strictly increasing (year " +
                                         std::to_string(p.year) + " after " + std::to_string(years_.back()) + ")");
            if (!(p.value > 0.0) || !std::isfinite(p.value))
                throw InvalidSeriesError("series '" + name_ + "': value at year " + std::to_string(p.year) +
                                         " must be a finite positive number");
            years_.push_back(p.year);
            values_.push_back(p.value);
        }
    }

    AnnualSeries(std::string name, std::initializer_list<YearValue> points)
        : AnnualSeries(std::move(name), std::span<const YearValue>(points.begin(), points.size())) {}

    AnnualSeries(std::string name, std::vector<int> years, std::vector<double> values)
        : AnnualSeries(std::move(name), to_points(years, values)) {}

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return years_.size(); }
    std::span<const int> years() const noexcept { return years_; }
    std::span<const double> values() const noexcept { return values_; }
    int year(std::size_t i) const noexcept { return years_[i]; }
    double value(std::size_t i) const noexcept { return values_[i]; }

    double mean() const noexcept { return detail::mean(values_); }

    /// Same series under a different label.
    AnnualSeries renamed(std::string name) const {
        AnnualSeries s(*this);
        if (name.empty()) throw InvalidSeriesError("series name must be non-empty");
        s.name_ = std::move(name);
        return s;
    }

    friend bool operator==(const AnnualSeries& a, const AnnualSeries& b) {
        return a.name_ == b.name_ && a.years_ == b.years_ && a.values_ == b.values_;
    }

    /// Inner-join sum: defined on the years where both series are defined,
    /// labelled "<a> + <b>".
    friend AnnualSeries operator+(const AnnualSeries& a, const AnnualSeries& b) {
        std::vector<YearValue> pts;
        pts.reserve(std::min(a.size(), b.size()));
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a.years_[i] < b.years_[j]) {
                ++i;
            } else if (a.years_[i] > b.years_[j]) {
                ++j;
            } else {
                pts.push_back({a.years_[i], a.values_[i] + b.values_[j]});
                ++i;
                ++j;
            }
        }
        if (pts.empty())
            throw EmptyIntersectionError("series '" + a.name_ + "' and '" + b.name_ +
                                         "' have no years in common");
        return AnnualSeries(a.name_ + " + " + b.name_, pts);
    }

private:
    static std::vector<YearValue> to_points(const std::vector<int>& years,
                                            const std::vector<double>& values) {
        if (years.size() != values.size())
            throw InvalidSeriesError("years and values must have the same length");
        std::vector<YearValue> pts(years.size());
        for (std::size_t i = 0; i < years.size(); ++i) pts[i] = {years[i], values[i]};
        return pts;
    }

    std::string name_;
    std::vector<int> years_;
    std::vector<double> values_;
};

inline std::size_t length(const AnnualSeries& s) noexcept { return s.size(); }

}  // namespace respro
